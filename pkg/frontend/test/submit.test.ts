import { describe, expect, it } from "vitest";

import { SubmitGuard } from "../src/submit.js";

describe("SubmitGuard", () => {
  it("suppresses a second submit while one is in flight", () => {
    const guard = new SubmitGuard();
    const first = guard.begin();
    expect(first).not.toBeNull();
    expect(guard.begin()).toBeNull(); // the double-click fires nothing
    expect(guard.busy).toBe(true);
  });

  it("settling the active ticket frees the guard", () => {
    const guard = new SubmitGuard();
    const ticket = guard.begin();
    expect(guard.settle(ticket as number)).toBe(true);
    expect(guard.busy).toBe(false);
    expect(guard.begin()).not.toBeNull();
  });

  it("discards responses that were superseded", () => {
    const guard = new SubmitGuard();
    const stale = guard.begin() as number;
    guard.reset(); // e.g. the user recovered from an error and resubmitted
    const fresh = guard.begin() as number;

    expect(guard.settle(stale)).toBe(false); // late response: drop it
    expect(guard.settle(fresh)).toBe(true);
  });
});
