// DOM bootstrap: renders the controller state into #app and wires events.
// Kept deliberately thin; everything interesting lives in controller.ts
// and views.ts, which the test suite drives against a mock API.

import { PortalController } from "./controller.js";
import { SessionStore } from "./session.js";
import {
  renderComplaints,
  renderFaq,
  renderLogin,
  renderLookup,
  renderShell,
  renderStaffConsole,
  type Route,
} from "./views.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}

const controller = new PortalController({
  session: new SessionStore(window.sessionStorage),
  onRender: () => render(),
});

function currentView(): string {
  const state = controller.state;
  switch (state.route) {
    case "login":
      return renderLogin(state.loginError);
    case "lookup":
      return renderLookup(state.lookup);
    case "complaints":
      return renderComplaints(state.complaints);
    case "faq":
      return renderFaq(state.faq);
    case "staff":
      return renderStaffConsole(state.staff);
  }
}

function render(): void {
  root!.innerHTML = renderShell(controller.session.get(), controller.state.route, currentView());
}

function routeFromHash(): Route {
  const hash = window.location.hash.replace(/^#/, "");
  const known: Route[] = ["login", "lookup", "complaints", "faq", "staff"];
  return (known as string[]).includes(hash) ? (hash as Route) : "login";
}

window.addEventListener("hashchange", () => controller.goto(routeFromHash()));

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  const action = form.dataset["action"];
  if (!action) {
    return;
  }
  event.preventDefault();
  const data = new FormData(form);
  const field = (name: string) => String(data.get(name) ?? "");
  if (action === "login") {
    void controller.login(field("email"), field("password"));
  } else if (action === "lookup") {
    void controller.lookupNota(field("nota"));
  } else if (action === "complain") {
    void controller.submitComplaint(field("text"), field("nota"));
  }
});

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-action]") as HTMLElement | null;
  if (!target || target.tagName === "FORM") {
    return;
  }
  const action = target.dataset["action"];
  if (action === "logout") {
    controller.logout();
    window.location.hash = "#login";
  } else if (action === "faq-select") {
    controller.selectFaq(target.dataset["id"] ?? "");
  } else if (action === "advance") {
    void controller.advanceOrder(target.dataset["nota"] ?? "", target.dataset["to"] ?? "");
  } else if (action === "complaint-state") {
    void controller.setComplaintState(target.dataset["id"] ?? "", target.dataset["state"] ?? "");
  }
});

root.addEventListener("input", (event) => {
  const target = event.target as HTMLInputElement;
  if (target.dataset["action"] === "faq-search") {
    controller.faqInput(target.value);
  }
});

controller.goto(controller.session.get() ? routeFromHash() : "faq");
render();
