/** Thin typed client over the backend HTTP API. */

import type {
  AccountSummary,
  ApiErrorBody,
  EnquiryResponse,
  FamilyMeta,
  ServiceMeta,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface EnquiryParams {
  family: number | string;
  service: number | string;
  account: string;
  from?: string;
  to?: string;
  depth?: number;
}

export class ApiClient {
  private token: string | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  get authenticated(): boolean {
    return this.token !== null;
  }

  async login(customerId: string, pin: string): Promise<void> {
    const body = await this.request<{ token: string }>("/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ customer_id: customerId, pin }),
    });
    this.token = body.token;
  }

  logout(): void {
    this.token = null;
  }

  async accounts(): Promise<AccountSummary[]> {
    const body = await this.request<{ accounts: AccountSummary[] }>("/accounts");
    return body.accounts;
  }

  async families(): Promise<FamilyMeta[]> {
    const body = await this.request<{ families: FamilyMeta[] }>("/meta/families");
    return body.families;
  }

  async services(): Promise<ServiceMeta[]> {
    const body = await this.request<{ services: ServiceMeta[] }>("/meta/services");
    return body.services;
  }

  async enquire(params: EnquiryParams): Promise<EnquiryResponse> {
    const query = new URLSearchParams({
      family: String(params.family),
      service: String(params.service),
      account: params.account,
    });
    if (params.from !== undefined) query.set("from", params.from);
    if (params.to !== undefined) query.set("to", params.to);
    if (params.depth !== undefined) query.set("depth", String(params.depth));
    return this.request<EnquiryResponse>(`/enquiry?${query.toString()}`);
  }

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const headers = new Headers(init.headers);
    if (this.token !== null) {
      headers.set("Authorization", `Bearer ${this.token}`);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, { ...init, headers });
    if (!response.ok) {
      const body = (await response.json().catch(() => null)) as ApiErrorBody | null;
      throw new ApiRequestError(
        body?.error ?? "unknown_error",
        body?.message ?? `HTTP ${response.status}`,
        response.status,
      );
    }
    return (await response.json()) as T;
  }
}
