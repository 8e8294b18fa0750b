/** Pure HTML renderers: state in, markup string out.
 *
 * Every money figure comes verbatim from one payload field; nothing is
 * summed or derived on the client.
 */

import { formatMinorUnits, formatTimestamp } from "./format.js";
import { canSubmit, type FlowState } from "./state.js";
import type {
  AccountSummary,
  EnquiryResponse,
  FamilyMeta,
  MoneyPayload,
  ServiceMeta,
  StatementPayload,
  MiniStatementPayload,
  TransactionPayload,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

function money(payload: MoneyPayload): string {
  return escapeHtml(formatMinorUnits(payload.amount_minor, payload.currency));
}

export function renderErrorBanner(message: string | null): string {
  if (message === null) return "";
  return `<div class="banner error" role="alert">${escapeHtml(message)}</div>`;
}

export function renderLoginScreen(error: string | null): string {
  return `
<section class="card" id="login-screen">
  <h2>Log in</h2>
  ${renderErrorBanner(error)}
  <form id="login-form">
    <label>Customer id <input name="customer" autocomplete="username" required></label>
    <label>PIN <input name="pin" type="password" autocomplete="current-password" required></label>
    <button type="submit">Log in</button>
  </form>
</section>`;
}

export function renderSelectScreen(
  families: FamilyMeta[],
  services: ServiceMeta[],
  accounts: AccountSummary[],
  state: FlowState,
): string {
  const familyOptions = families
    .map(
      (f) =>
        `<option value="${f.selector}"${
          state.familySelector === f.selector ? " selected" : ""
        }>${escapeHtml(f.name)}</option>`,
    )
    .join("");
  const serviceOptions = services
    .map(
      (s) =>
        `<option value="${s.index}"${
          state.serviceIndex === s.index ? " selected" : ""
        }>${escapeHtml(s.name)}</option>`,
    )
    .join("");
  const accountOptions = accounts
    .map(
      (a) =>
        `<option value="${escapeHtml(a.id)}"${
          state.accountId === a.id ? " selected" : ""
        }>${escapeHtml(a.id)} (${escapeHtml(a.family)})</option>`,
    )
    .join("");
  const disabled = canSubmit(state) ? "" : " disabled";
  return `
<section class="card" id="select-screen">
  <h2>Enquiry</h2>
  ${renderErrorBanner(state.error)}
  <form id="enquiry-form">
    <label>Account family
      <select id="family-picker" required>
        <option value="" hidden${state.familySelector === null ? " selected" : ""}>choose</option>
        ${familyOptions}
      </select>
    </label>
    <label>Service
      <select id="service-picker" required>
        <option value="" hidden${state.serviceIndex === null ? " selected" : ""}>choose</option>
        ${serviceOptions}
      </select>
    </label>
    <label>Account
      <select id="account-picker" required>
        <option value="" hidden${state.accountId === null ? " selected" : ""}>choose</option>
        ${accountOptions}
      </select>
    </label>
    <button type="submit" id="submit-enquiry"${disabled}>Run enquiry</button>
  </form>
</section>`;
}

function renderLines(lines: TransactionPayload[]): string {
  if (lines.length === 0) {
    return `<p class="empty">No transactions in this view.</p>`;
  }
  const rows = lines
    .map(
      (line) => `
    <tr>
      <td>${escapeHtml(formatTimestamp(line.timestamp))}</td>
      <td>${escapeHtml(line.kind)}</td>
      <td>${escapeHtml(line.description)}</td>
      <td class="num">${escapeHtml(formatMinorUnits(line.amount_minor, line.currency))}</td>
    </tr>`,
    )
    .join("");
  return `
  <table class="lines">
    <thead><tr><th>when</th><th>kind</th><th>description</th><th>amount</th></tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

function renderStatement(payload: StatementPayload): string {
  return `
  <p>Statement for <strong>${escapeHtml(payload.account_id)}</strong>,
     ${escapeHtml(formatTimestamp(payload.period_from))} to
     ${escapeHtml(formatTimestamp(payload.period_to))}</p>
  <p>Opening balance: <span class="amount">${money(payload.opening_balance)}</span></p>
  ${renderLines(payload.lines)}
  <p>Closing balance: <span class="amount" id="closing-balance">${money(
    payload.closing_balance,
  )}</span></p>`;
}

function renderMiniStatement(payload: MiniStatementPayload): string {
  return `
  <p>Last ${payload.lines.length} transactions for
     <strong>${escapeHtml(payload.account_id)}</strong></p>
  ${renderLines(payload.lines)}
  <p>Current balance: <span class="amount">${money(payload.current_balance)}</span></p>`;
}

export function renderResultScreen(result: EnquiryResponse, error: string | null): string {
  let body: string;
  let detailAction = "";
  switch (result.variant) {
    case "balance":
      body = `<p class="balance-figure"><span class="amount" id="balance-amount">${money(
        result.payload,
      )}</span></p>`;
      detailAction = `<button type="button" id="view-detail">View detail</button>`;
      break;
    case "statement":
      body = renderStatement(result.payload);
      break;
    case "mini_statement":
      body = renderMiniStatement(result.payload);
      break;
  }
  return `
<section class="card" id="result-screen">
  <h2>${escapeHtml(result.service)} &middot; ${escapeHtml(result.family)}</h2>
  ${renderErrorBanner(error)}
  ${body}
  <nav>
    ${detailAction}
    <button type="button" id="back-to-select">Back</button>
  </nav>
</section>`;
}

export function renderDetailScreen(detail: EnquiryResponse): string {
  const body =
    detail.variant === "statement"
      ? renderStatement(detail.payload)
      : renderResultScreen(detail, null);
  return `
<section class="card" id="detail-screen">
  <h2>Balance detail</h2>
  ${body}
  <nav><button type="button" id="back-to-result">Back</button></nav>
</section>`;
}

export function renderApp(
  state: FlowState,
  families: FamilyMeta[],
  services: ServiceMeta[],
  accounts: AccountSummary[],
): string {
  switch (state.phase) {
    case "login":
      return renderLoginScreen(state.error);
    case "select":
      return renderSelectScreen(families, services, accounts, state);
    case "result":
      return state.result !== null
        ? renderResultScreen(state.result, state.error)
        : renderSelectScreen(families, services, accounts, state);
    case "detail":
      return state.detail !== null
        ? renderDetailScreen(state.detail)
        : renderSelectScreen(families, services, accounts, state);
  }
}
