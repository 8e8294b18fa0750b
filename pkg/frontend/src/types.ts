/** Wire types, mirroring the backend JSON exactly. */

export interface FamilyMeta {
  selector: number;
  name: string;
}

export interface ServiceMeta {
  index: number;
  code: number;
  name: string;
}

export interface AccountSummary {
  id: string;
  family: string;
  currency: string;
  opened_at: string;
}

export interface MoneyPayload {
  amount_minor: number;
  currency: string;
}

export interface TransactionPayload {
  seq: number;
  account_id: string;
  timestamp: string;
  amount_minor: number;
  currency: string;
  kind: string;
  description: string;
}

export interface StatementPayload {
  account_id: string;
  period_from: string;
  period_to: string;
  opening_balance: MoneyPayload;
  lines: TransactionPayload[];
  closing_balance: MoneyPayload;
}

export interface MiniStatementPayload {
  account_id: string;
  lines: TransactionPayload[];
  current_balance: MoneyPayload;
}

interface EnquiryBase {
  family: string;
  service: string;
}

export type EnquiryResponse =
  | (EnquiryBase & { variant: "balance"; payload: MoneyPayload })
  | (EnquiryBase & { variant: "statement"; payload: StatementPayload })
  | (EnquiryBase & { variant: "mini_statement"; payload: MiniStatementPayload });

export interface ApiErrorBody {
  error: string;
  message: string;
}
