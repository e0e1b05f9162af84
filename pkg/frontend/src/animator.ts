// Plan playback: label positions, phases, opacity, and overlap highlighting
// as pure functions of plan time.  One plan time unit animates as one second.

import type { MovementJson, PlanJson, RectJson } from "./types";

export type LabelPhase = "removing" | "moving" | "adding" | "idle";

export interface AnimatedLabel {
  labelId: string;
  rect: RectJson;
  phase: LabelPhase;
  opacity: number;
  highlight: boolean;
}

export const MS_PER_UNIT = 1000;

function lerpRect(mv: MovementJson, t: number): RectJson {
  const kfs = mv.keyframes;
  const first = kfs[0];
  const last = kfs[kfs.length - 1];
  const { width, height } = mv.legs[0].from;
  if (t <= first[0]) return { min_x: first[1], min_y: first[2], width, height };
  if (t >= last[0]) return { min_x: last[1], min_y: last[2], width, height };
  // binary search for the keyframe interval containing t
  let lo = 0;
  let hi = kfs.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (kfs[mid][0] <= t) lo = mid;
    else hi = mid;
  }
  const [t0, x0, y0] = kfs[lo];
  const [t1, x1, y1] = kfs[hi];
  const f = t1 > t0 ? (t - t0) / (t1 - t0) : 0;
  return {
    min_x: x0 + f * (x1 - x0),
    min_y: y0 + f * (y1 - y0),
    width,
    height,
  };
}

export class PlanAnimator {
  private highlighted = new Map<string, Array<[number, number]>>();

  constructor(
    public readonly plan: PlanJson,
    public highlightEnabled = true,
  ) {
    for (const ov of plan.overlaps) {
      for (const id of [ov.id_a, ov.id_b]) {
        const list = this.highlighted.get(id) ?? [];
        list.push([ov.t_start, ov.t_end]);
        this.highlighted.set(id, list);
      }
    }
  }

  get makespan(): number {
    return this.plan.makespan;
  }

  isDone(t: number): boolean {
    return t >= this.plan.makespan;
  }

  private isHighlighted(labelId: string, t: number): boolean {
    if (!this.highlightEnabled) return false;
    const windows = this.highlighted.get(labelId);
    if (!windows) return false;
    return windows.some(([a, b]) => t >= a && t <= b);
  }

  /** Every label's drawn state at plan time t. */
  labelsAt(t: number): AnimatedLabel[] {
    const out: AnimatedLabel[] = [];
    const makespan = this.plan.makespan;
    for (const r of this.plan.removals) {
      if (t >= 1.0) continue; // fully faded once the removal phase ends
      out.push({
        labelId: r.label_id,
        rect: r.rect,
        phase: "removing",
        opacity: Math.max(0, 1 - t),
        highlight: this.isHighlighted(r.label_id, t),
      });
    }
    const additionStart = makespan - (this.plan.additions.length ? 1.0 : 0.0);
    for (const a of this.plan.additions) {
      if (t < additionStart) continue;
      out.push({
        labelId: a.label_id,
        rect: a.rect,
        phase: t < makespan ? "adding" : "idle",
        opacity: Math.min(1, t - additionStart),
        highlight: this.isHighlighted(a.label_id, t),
      });
    }
    for (const s of this.plan.stationary) {
      out.push({
        labelId: s.label_id,
        rect: s.rect,
        phase: "idle",
        opacity: 1,
        highlight: this.isHighlighted(s.label_id, t),
      });
    }
    for (const mv of this.plan.movements) {
      const moving = t >= mv.start_time && t <= mv.start_time + mv.duration;
      out.push({
        labelId: mv.label_id,
        rect: lerpRect(mv, t),
        phase: moving ? "moving" : "idle",
        opacity: 1,
        highlight: this.isHighlighted(mv.label_id, t),
      });
    }
    return out;
  }
}

/** Wall-clock playback driver; pass timestamps in ms (fake or real). */
export class PlanPlayback {
  private startedAt: number | null = null;

  constructor(
    public readonly animator: PlanAnimator,
    public readonly msPerUnit: number = MS_PER_UNIT,
  ) {}

  timeAt(nowMs: number): number {
    if (this.startedAt === null) this.startedAt = nowMs;
    const t = (nowMs - this.startedAt) / this.msPerUnit;
    return Math.min(t, this.animator.makespan);
  }

  frame(nowMs: number): { t: number; labels: AnimatedLabel[]; done: boolean } {
    const t = this.timeAt(nowMs);
    return { t, labels: this.animator.labelsAt(t), done: this.animator.isDone(t) };
  }
}
