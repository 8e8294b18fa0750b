/** Flow-state machine for the enquiry screens.
 *
 * Phases: login -> select -> result -> detail. A result needs all three
 * choices; detail is reachable only from a result. Illegal events leave
 * the state untouched, so the machine itself enforces the flow.
 */

import type { EnquiryResponse } from "./types.js";

export type Phase = "login" | "select" | "result" | "detail";

export interface FlowState {
  phase: Phase;
  familySelector: number | null;
  serviceIndex: number | null;
  accountId: string | null;
  result: EnquiryResponse | null;
  detail: EnquiryResponse | null;
  error: string | null;
}

export type FlowEvent =
  | { type: "login_ok" }
  | { type: "logout" }
  | { type: "choose"; family?: number; service?: number; account?: string }
  | { type: "result_ok"; result: EnquiryResponse }
  | { type: "enquiry_failed"; code: string }
  | { type: "detail_ok"; result: EnquiryResponse }
  | { type: "back" };

export const INITIAL_STATE: FlowState = {
  phase: "login",
  familySelector: null,
  serviceIndex: null,
  accountId: null,
  result: null,
  detail: null,
  error: null,
};

const ERROR_MESSAGES: Record<string, string> = {
  null_selection: "unknown selection",
  unsupported_combination: "that enquiry is not available for this account type",
  family_mismatch: "the account does not belong to the chosen family",
  no_such_account: "account not found",
  unauthenticated: "your session expired, please log in again",
  invalid_period: "the statement period is invalid",
  invalid_depth: "the mini-statement depth is invalid",
};

export function messageForError(code: string): string {
  return ERROR_MESSAGES[code] ?? `request failed (${code})`;
}

export function canSubmit(state: FlowState): boolean {
  return (
    state.phase === "select" &&
    state.familySelector !== null &&
    state.serviceIndex !== null &&
    state.accountId !== null
  );
}

export function transition(state: FlowState, event: FlowEvent): FlowState {
  switch (event.type) {
    case "login_ok":
      if (state.phase !== "login") return state;
      return { ...INITIAL_STATE, phase: "select" };

    case "logout":
      return INITIAL_STATE;

    case "choose": {
      if (state.phase !== "select") return state;
      return {
        ...state,
        familySelector: event.family ?? state.familySelector,
        serviceIndex: event.service ?? state.serviceIndex,
        accountId: event.account ?? state.accountId,
        error: null,
      };
    }

    case "result_ok":
      if (!canSubmit(state)) return state;
      return { ...state, phase: "result", result: event.result, error: null };

    case "enquiry_failed": {
      // failures of the session itself drop back to login; everything
      // else returns to the select screen with a readable banner
      const message = messageForError(event.code);
      if (event.code === "unauthenticated") {
        return { ...INITIAL_STATE, error: message };
      }
      return {
        ...state,
        phase: "select",
        result: null,
        detail: null,
        error: message,
      };
    }

    case "detail_ok":
      if (state.phase !== "result") return state;
      return { ...state, phase: "detail", detail: event.result, error: null };

    case "back":
      if (state.phase === "detail") return { ...state, phase: "result", detail: null };
      if (state.phase === "result") return { ...state, phase: "select", result: null };
      return state;

    default:
      return state;
  }
}
