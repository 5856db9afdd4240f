// Query lifecycle: one /api/query per slider or tracking change, with
// stale in-flight responses discarded by sequence number.

import type { ApiClient } from "./api.js";
import {
  hasActiveCriteria,
  setSlider,
  setTracking,
  type ViewState,
  initialState,
} from "./state.js";
import type {
  AspectName,
  Choice,
  NetworkPayload,
  QueryPayload,
  TargetPayload,
  UploadPayload,
} from "./types.js";

export interface ControllerEvents {
  onQuery(payload: QueryPayload | null, state: ViewState): void;
  onNetwork(payload: NetworkPayload, members: string[]): void;
  onTarget(payload: TargetPayload): void;
  onUpload(payload: UploadPayload): void;
  onError(code: string, message: string): void;
}

export class Controller {
  state: ViewState = initialState();
  private sequence = 0;

  constructor(
    private api: ApiClient,
    private events: ControllerEvents,
  ) {}

  async changeSlider(aspect: AspectName, choice: Choice): Promise<void> {
    this.state = setSlider(this.state, aspect, choice);
    await this.refresh();
  }

  async changeTracking(keyword: string | null, author: string | null): Promise<void> {
    this.state = setTracking(this.state, keyword, author);
    await this.refresh();
  }

  restore(state: ViewState): Promise<void> {
    this.state = state;
    return this.refresh();
  }

  private async refresh(): Promise<void> {
    const ticket = ++this.sequence;
    if (!hasActiveCriteria(this.state)) {
      this.events.onQuery(null, this.state);
      return;
    }
    try {
      const payload = await this.api.query(this.state.criteria, this.state.tracking);
      if (ticket !== this.sequence) return; // a newer query superseded this one
      this.events.onQuery(payload, this.state);
    } catch (error) {
      if (ticket !== this.sequence) return;
      this.report(error);
    }
  }

  async openCluster(members: string[]): Promise<void> {
    this.state = { ...this.state, selectedCluster: members, selectedTarget: null };
    try {
      const payload = await this.api.network(this.state.criteria, members);
      this.events.onNetwork(payload, members);
    } catch (error) {
      this.report(error);
    }
  }

  async openTarget(id: string): Promise<void> {
    this.state = { ...this.state, selectedTarget: id };
    try {
      const payload = await this.api.target(this.state.criteria, id);
      this.events.onTarget(payload);
    } catch (error) {
      this.report(error);
    }
  }

  async uploadAbstract(text: string): Promise<void> {
    try {
      const payload = await this.api.uploadAbstract(text);
      this.events.onUpload(payload);
    } catch (error) {
      this.report(error);
    }
  }

  private report(error: unknown): void {
    const anyError = error as { code?: string; message?: string };
    this.events.onError(anyError.code ?? "Error", anyError.message ?? String(error));
  }
}
