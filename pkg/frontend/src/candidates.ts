/** Candidate review queue built on the API client. */

import { ApiClient, Candidate, StaleRevisionError } from "./api.js";

export type AcceptOutcome =
  | { outcome: "accepted"; candidate: Candidate }
  | { outcome: "conflict"; current: number };

export class ReviewQueue {
  candidates: Candidate[] = [];

  constructor(private api: ApiClient) {}

  async refresh(): Promise<void> {
    const data = await this.api.listCandidates("Proposed");
    this.candidates = data.candidates;
  }

  /**
   * Accept one candidate with the revision last read by the client.
   * A 409 means another actor changed the workspace since that read: the
   * client has already picked up the server's current revision from the
   * conflict body, so the caller can inspect fresh state and retry.
   */
  async accept(id: string): Promise<AcceptOutcome> {
    try {
      const data = await this.api.acceptCandidate(id);
      this.candidates = this.candidates.filter((c) => c.id !== id);
      return { outcome: "accepted", candidate: data.candidate };
    } catch (err) {
      if (err instanceof StaleRevisionError) {
        return { outcome: "conflict", current: err.current };
      }
      throw err;
    }
  }

  /** Accept with one automatic retry after a revision conflict. */
  async acceptWithRetry(id: string): Promise<AcceptOutcome> {
    const first = await this.accept(id);
    if (first.outcome !== "conflict") return first;
    await this.refresh();
    if (!this.candidates.some((c) => c.id === id)) return first;
    return this.accept(id);
  }

  async reject(id: string): Promise<Candidate> {
    const data = await this.api.rejectCandidate(id);
    this.candidates = this.candidates.filter((c) => c.id !== id);
    return data.candidate;
  }
}
