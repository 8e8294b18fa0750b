/** Guards the enquiry round-trip: one in-flight request, stale results dropped.
 *
 * `begin()` hands out a ticket, or null while a request is already
 * running (a double-click therefore fires nothing). `settle(ticket)`
 * reports whether that ticket is still the one the UI is waiting for;
 * superseded responses must be discarded by the caller.
 */

export class SubmitGuard {
  private inFlight = false;
  private latest = 0;

  get busy(): boolean {
    return this.inFlight;
  }

  begin(): number | null {
    if (this.inFlight) return null;
    this.inFlight = true;
    this.latest += 1;
    return this.latest;
  }

  /** Allow a newer submit to supersede without waiting (e.g. after errors). */
  reset(): void {
    this.inFlight = false;
  }

  settle(ticket: number): boolean {
    if (ticket === this.latest) {
      this.inFlight = false;
      return true;
    }
    return false;
  }
}
