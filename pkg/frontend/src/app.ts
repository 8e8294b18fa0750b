/** DOM binder: renders the current flow state into #app and wires events.
 *
 * All logic lives in the pure modules (state, render, format, submit);
 * this file only moves strings into the document and events out of it.
 */

import { ApiClient, ApiRequestError } from "./api.js";
import { renderApp, renderErrorBanner } from "./render.js";
import {
  INITIAL_STATE,
  canSubmit,
  transition,
  type FlowEvent,
  type FlowState,
} from "./state.js";
import { SubmitGuard } from "./submit.js";
import type { AccountSummary, FamilyMeta, ServiceMeta } from "./types.js";

const DETAIL_PERIOD_DAYS = 30;

export class App {
  private state: FlowState = INITIAL_STATE;
  private families: FamilyMeta[] = [];
  private services: ServiceMeta[] = [];
  private accounts: AccountSummary[] = [];
  private guard = new SubmitGuard();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  start(): void {
    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      const form = event.target as HTMLElement;
      if (form.id === "login-form") void this.onLogin(form as HTMLFormElement);
      if (form.id === "enquiry-form") void this.onSubmitEnquiry();
    });
    this.root.addEventListener("change", (event) => {
      const picker = event.target as HTMLSelectElement;
      if (picker.id === "family-picker") {
        this.apply({ type: "choose", family: Number(picker.value) });
      } else if (picker.id === "service-picker") {
        this.apply({ type: "choose", service: Number(picker.value) });
      } else if (picker.id === "account-picker") {
        this.apply({ type: "choose", account: picker.value });
      }
    });
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.id === "view-detail") void this.onViewDetail();
      if (target.id === "back-to-select" || target.id === "back-to-result") {
        this.apply({ type: "back" });
      }
      if (target.id === "retry-meta") void this.loadDirectory();
    });
    this.render();
  }

  private apply(event: FlowEvent): void {
    this.state = transition(this.state, event);
    this.render();
  }

  private render(): void {
    this.root.innerHTML = renderApp(this.state, this.families, this.services, this.accounts);
  }

  private async onLogin(form: HTMLFormElement): Promise<void> {
    const data = new FormData(form);
    try {
      await this.api.login(String(data.get("customer") ?? ""), String(data.get("pin") ?? ""));
    } catch (error) {
      this.state = { ...this.state, error: this.describe(error) };
      this.render();
      return;
    }
    this.apply({ type: "login_ok" });
    await this.loadDirectory();
  }

  private async loadDirectory(): Promise<void> {
    try {
      [this.families, this.services, this.accounts] = await Promise.all([
        this.api.families(),
        this.api.services(),
        this.api.accounts(),
      ]);
      this.render();
    } catch (error) {
      this.root.innerHTML = `
        ${renderErrorBanner(this.describe(error))}
        <button type="button" id="retry-meta">Retry</button>`;
    }
  }

  private async onSubmitEnquiry(): Promise<void> {
    if (!canSubmit(this.state)) return;
    const ticket = this.guard.begin();
    if (ticket === null) return; // a request is already in flight
    const { familySelector, serviceIndex, accountId } = this.state;
    try {
      const result = await this.api.enquire({
        family: familySelector as number,
        service: serviceIndex as number,
        account: accountId as string,
      });
      if (!this.guard.settle(ticket)) return; // superseded, drop it
      this.apply({ type: "result_ok", result });
    } catch (error) {
      this.guard.reset();
      this.applyFailure(error);
    }
  }

  private async onViewDetail(): Promise<void> {
    if (this.state.phase !== "result" || this.state.accountId === null) return;
    const ticket = this.guard.begin();
    if (ticket === null) return;
    const to = new Date();
    const from = new Date(to.getTime() - DETAIL_PERIOD_DAYS * 24 * 3600 * 1000);
    try {
      const result = await this.api.enquire({
        family: this.state.familySelector as number,
        service: "statement",
        account: this.state.accountId,
        from: from.toISOString(),
        to: to.toISOString(),
      });
      if (!this.guard.settle(ticket)) return;
      this.apply({ type: "detail_ok", result });
    } catch (error) {
      this.guard.reset();
      this.applyFailure(error);
    }
  }

  private applyFailure(error: unknown): void {
    if (error instanceof ApiRequestError) {
      this.apply({ type: "enquiry_failed", code: error.code });
    } else {
      this.apply({ type: "enquiry_failed", code: "network_error" });
    }
  }

  private describe(error: unknown): string {
    if (error instanceof ApiRequestError) return error.message;
    return "could not reach the bank service";
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app container");
  const api = new ApiClient(resolveBaseUrl());
  new App(root, api).start();
}

function resolveBaseUrl(): string {
  // served from the API's /ui mount by default; override for dev servers
  const override = document.querySelector<HTMLMetaElement>('meta[name="netbank-api"]');
  return override?.content ?? "";
}

if (typeof document !== "undefined" && document.getElementById("app") !== null) {
  boot();
}
