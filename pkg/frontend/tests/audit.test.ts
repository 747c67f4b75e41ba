// Code audit: the portal must not embed server-side decisions.  Every
// order status, legal transition and search score must arrive from the
// API, so none of those may appear as constants in the source.

import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

const SRC = join(__dirname, "..", "src");

function sources(): Array<[string, string]> {
  return readdirSync(SRC)
    .filter((name) => name.endsWith(".ts"))
    .map((name) => [name, readFileSync(join(SRC, name), "utf-8")]);
}

const ORDER_STATUS_LITERALS = [
  "Received",
  "Diagnosing",
  "AwaitingParts",
  "InRepair",
  "Completed",
  "PickedUp",
  "Cancelled",
];

describe("code audit", () => {
  it("contains no order status constants (the transition table lives server-side)", () => {
    for (const [name, text] of sources()) {
      for (const literal of ORDER_STATUS_LITERALS) {
        expect(text, `${name} must not hardcode status "${literal}"`).not.toContain(
          `"${literal}"`,
        );
        expect(text, `${name} must not hardcode status '${literal}'`).not.toContain(
          `'${literal}'`,
        );
      }
    }
  });

  it("contains no local edit-distance implementation", () => {
    for (const [name, text] of sources()) {
      expect(text.toLowerCase(), `${name} must not implement the matcher`).not.toMatch(
        /levenshtein|editdistance|edit_distance/,
      );
    }
  });

  it("every status rendering derives from payload fields, not literals", () => {
    const views = readFileSync(join(SRC, "views.ts"), "utf-8");
    expect(views).toContain("order.legal_transitions");
    expect(views).toContain("event.status");
    // No switch/case or mapping keyed on specific statuses.
    expect(views).not.toMatch(/case\s+["']/);
  });
});
