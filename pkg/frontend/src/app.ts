// Interactive map explorer: wires the service client, the plan animator and
// the canvas renderer to the page controls.  One interaction is in flight at
// a time; input during an animation queues the next request.

import { SessionClient } from "./api";
import { MS_PER_UNIT, PlanAnimator, PlanPlayback } from "./animator";
import { MapView, labelsFromLabeling } from "./mapview";
import type { ActionJson, LabelingJson, ViewJson } from "./types";

const BASE_URL =
  (globalThis as { LABELMOTION_URL?: string }).LABELMOTION_URL ??
  "http://localhost:8000";

interface Elements {
  canvas: HTMLCanvasElement;
  status: HTMLElement;
  metrics: HTMLElement;
  timeLabel: HTMLElement;
  style: HTMLSelectElement;
  highlight: HTMLInputElement;
}

class App {
  private client = new SessionClient(BASE_URL);
  private view: ViewJson | null = null;
  private labeling: LabelingJson = {};
  private playback: PlanPlayback | null = null;
  private queue: ActionJson[] = [];
  private busy = false;
  private mapView: MapView;
  private highlightEnabled = true;

  constructor(private el: Elements) {
    this.mapView = new MapView(el.canvas.width, el.canvas.height);
  }

  async start(): Promise<void> {
    try {
      const doc = await this.client.createSession("synthetic-11", this.el.style.value);
      this.view = doc.view;
      this.labeling = doc.labeling;
      this.el.status.textContent = `session ${doc.session_id} (${doc.style})`;
      this.updateTimeLabel();
      this.draw();
      requestAnimationFrame((ts) => this.tick(ts));
    } catch (err) {
      this.el.status.textContent = `service unreachable: ${err}`;
      this.el.status.classList.add("error");
      document.querySelectorAll("button, select, input").forEach((node) => {
        (node as HTMLButtonElement).disabled = true;
      });
    }
  }

  submit(action: ActionJson): void {
    this.queue.push(action);
    void this.pump();
  }

  private async pump(): Promise<void> {
    if (this.busy || this.queue.length === 0) return;
    this.busy = true;
    const action = this.queue.shift()!;
    try {
      const resp = await this.client.interact(action);
      this.view = resp.view;
      this.labeling = resp.labeling;
      const animator = new PlanAnimator(resp.plan, this.highlightEnabled);
      this.playback = new PlanPlayback(animator, MS_PER_UNIT);
      this.el.metrics.textContent = [
        `action ${resp.metrics.action}`,
        `moved ${resp.metrics.moved}`,
        `added ${resp.metrics.added}`,
        `removed ${resp.metrics.removed}`,
        `overlap pairs ${resp.metrics.pair_count}`,
        `duration ${resp.metrics.makespan.toFixed(1)} s`,
      ].join(" | ");
      this.updateTimeLabel();
    } catch (err) {
      this.el.status.textContent = `request failed: ${err}`;
      this.playback = null;
    } finally {
      this.busy = false;
    }
  }

  private updateTimeLabel(): void {
    if (this.view) this.el.timeLabel.textContent = this.view.time_of_interest;
  }

  private draw(t: number | null = null): void {
    const ctx = this.el.canvas.getContext("2d");
    if (!ctx || !this.view) return;
    const labels =
      this.playback && t !== null
        ? this.playback.animator.labelsAt(t)
        : labelsFromLabeling(this.labeling);
    this.mapView.render(ctx, this.view, labels, this.labeling);
  }

  private tick(nowMs: number): void {
    if (this.playback) {
      const frame = this.playback.frame(nowMs);
      this.draw(frame.t);
      if (frame.done) {
        this.playback = null;
        this.draw(); // snap to the session labeling
        void this.pump(); // run anything queued during the animation
      }
    }
    requestAnimationFrame((ts) => this.tick(ts));
  }

  setHighlight(enabled: boolean): void {
    this.highlightEnabled = enabled;
    if (this.playback) this.playback.animator.highlightEnabled = enabled;
  }
}

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

export function boot(): void {
  const app = new App({
    canvas: element<HTMLCanvasElement>("map"),
    status: element("status"),
    metrics: element("metrics"),
    timeLabel: element("time-label"),
    style: element<HTMLSelectElement>("style"),
    highlight: element<HTMLInputElement>("highlight"),
  });
  element("zoom-in").addEventListener("click", () =>
    app.submit({ type: "zoom", step: 1 }));
  element("zoom-out").addEventListener("click", () =>
    app.submit({ type: "zoom", step: -1 }));
  element("time-plus").addEventListener("click", () =>
    app.submit({ type: "time_shift", minutes: 5 }));
  element("time-minus").addEventListener("click", () =>
    app.submit({ type: "time_shift", minutes: -5 }));
  element("pan-north").addEventListener("click", () =>
    app.submit({ type: "pan", dlon: 0, dlat: 0.28 }));
  element("pan-south").addEventListener("click", () =>
    app.submit({ type: "pan", dlon: 0, dlat: -0.28 }));
  element<HTMLInputElement>("highlight").addEventListener("change", (ev) =>
    app.setHighlight((ev.target as HTMLInputElement).checked));
  void app.start();
}

if (typeof document !== "undefined" && document.getElementById("map")) {
  boot();
}
