/** Presentation of server-supplied money fields.
 *
 * The UI never derives money values; it only re-shapes a single
 * `amount_minor` payload field (minor-unit exponent 2) into display text.
 */

const SYMBOLS: Record<string, string> = {
  INR: "₹",
  USD: "$",
  EUR: "€",
  GBP: "£",
};

export function formatMinorUnits(amountMinor: number, currency: string): string {
  const symbol = SYMBOLS[currency] ?? `${currency} `;
  const sign = amountMinor < 0 ? "-" : "";
  const abs = Math.abs(amountMinor);
  const units = Math.trunc(abs / 100);
  const cents = String(abs % 100).padStart(2, "0");
  return `${sign}${symbol}${units}.${cents}`;
}

export function formatTimestamp(iso: string): string {
  // "2025-01-08T11:01:01.078Z" -> "2025-01-08 11:01"
  return iso.slice(0, 16).replace("T", " ");
}
