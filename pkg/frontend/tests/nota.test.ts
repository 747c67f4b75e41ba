import { describe, expect, it } from "vitest";

import { isWellFormedNota, notaFormatHint } from "../src/nota.js";

describe("nota format check", () => {
  it.each(["RKU-20160520-0001", "RKU-20991231-9999", "  RKU-20160520-0001  "])(
    "accepts %s",
    (text) => {
      expect(isWellFormedNota(text)).toBe(true);
    },
  );

  it.each(["RKU-2016-07", "rku-20160520-0001", "20160520-0001", "RKU-20160520-001", "nota"])(
    "rejects %s",
    (text) => {
      expect(isWellFormedNota(text)).toBe(false);
    },
  );

  it("offers a hint only for malformed non-empty input", () => {
    expect(notaFormatHint("")).toBeNull();
    expect(notaFormatHint("   ")).toBeNull();
    expect(notaFormatHint("RKU-20160520-0001")).toBeNull();
    expect(notaFormatHint("RKU-123")).toMatch(/RKU-20160520-0001/);
  });
});
