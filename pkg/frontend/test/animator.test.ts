import { describe, expect, it } from "vitest";

import { PlanAnimator, PlanPlayback } from "../src/animator";
import type { PlanJson, RectJson } from "../src/types";

function rect(minX: number, minY: number, w = 1, h = 1): RectJson {
  return { min_x: minX, min_y: minY, width: w, height: h };
}

// Removal phase [0,1], one diagonal movement at [1,3] (horizontal first),
// addition phase [3,4]; keyframes carry the exact leg endpoints.
const PLAN: PlanJson = {
  version: 1,
  style: "naive",
  makespan: 4,
  movement_span: 2,
  phases: { removal: [0, 1], movement: [1, 3], addition: [3, 4] },
  removals: [{ label_id: "gone", slot: "TL", rect: rect(5, 5) }],
  additions: [{ label_id: "fresh", slot: "TR", rect: rect(8, 8) }],
  stationary: [{ label_id: "rock", slot: "BL", rect: rect(-5, -5) }],
  movements: [
    {
      label_id: "walker",
      from_slot: "TL",
      to_slot: "BR",
      axis_order: "HORIZONTAL_FIRST",
      start_time: 1,
      duration: 2,
      legs: [
        { t_start: 1, t_end: 2, from: rect(-1, 0), to: rect(0, 0), direction: "+x" },
        { t_start: 2, t_end: 3, from: rect(0, 0), to: rect(0, -1), direction: "-y" },
      ],
      keyframes: [
        [1, -1, 0],
        [2, 0, 0],
        [3, 0, -1],
      ],
    },
  ],
  overlaps: [
    { id_a: "rock", id_b: "walker", t_start: 1.5, t_end: 2.5, penalty: 1 },
  ],
  pair_count: 1,
  total_penalty: 1,
};

function labelById(animator: PlanAnimator, t: number, id: string) {
  const found = animator.labelsAt(t).find((l) => l.labelId === id);
  if (!found) throw new Error(`label ${id} not drawn at t=${t}`);
  return found;
}

describe("PlanAnimator", () => {
  const animator = new PlanAnimator(PLAN);

  it("fades removals during the removal phase and drops them after", () => {
    expect(labelById(animator, 0, "gone").opacity).toBe(1);
    expect(labelById(animator, 0.5, "gone").opacity).toBeCloseTo(0.5);
    expect(animator.labelsAt(1.5).some((l) => l.labelId === "gone")).toBe(false);
  });

  it("shows additions only during the addition phase, fading in", () => {
    expect(animator.labelsAt(2.9).some((l) => l.labelId === "fresh")).toBe(false);
    expect(labelById(animator, 3.5, "fresh").opacity).toBeCloseTo(0.5);
    expect(labelById(animator, 4, "fresh").opacity).toBe(1);
  });

  it("moves horizontally first on diagonal movements", () => {
    const mid = labelById(animator, 1.5, "walker");
    expect(mid.rect.min_x).toBeCloseTo(-0.5); // x is moving...
    expect(mid.rect.min_y).toBeCloseTo(0); // ...y has not started
    const later = labelById(animator, 2.5, "walker");
    expect(later.rect.min_x).toBeCloseTo(0);
    expect(later.rect.min_y).toBeCloseTo(-0.5);
  });

  it("clamps movers before their start and after their end", () => {
    expect(labelById(animator, 0, "walker").rect).toEqual(rect(-1, 0));
    expect(labelById(animator, 4, "walker").rect).toEqual(rect(0, -1));
    expect(labelById(animator, 0, "walker").phase).toBe("idle");
    expect(labelById(animator, 2, "walker").phase).toBe("moving");
  });

  it("highlights exactly while an overlap interval covers the clock", () => {
    expect(labelById(animator, 1.4, "walker").highlight).toBe(false);
    expect(labelById(animator, 2.0, "walker").highlight).toBe(true);
    expect(labelById(animator, 2.0, "rock").highlight).toBe(true);
    expect(labelById(animator, 2.6, "rock").highlight).toBe(false);
    const muted = new PlanAnimator(PLAN, false);
    expect(labelById(muted, 2.0, "walker").highlight).toBe(false);
  });

  it("ends with the drawn set equal to the plan target", () => {
    const ids = animator.labelsAt(animator.makespan).map((l) => l.labelId).sort();
    expect(ids).toEqual(["fresh", "rock", "walker"]);
  });
});

describe("PlanPlayback", () => {
  it("maps one time unit to one second of clock time", () => {
    const playback = new PlanPlayback(new PlanAnimator(PLAN), 1000);
    expect(playback.frame(10_000).t).toBe(0);
    expect(playback.frame(11_500).t).toBeCloseTo(1.5);
    const end = playback.frame(14_000);
    expect(end.t).toBe(4);
    expect(end.done).toBe(true);
    expect(playback.frame(15_000).t).toBe(4); // clamped after completion
  });
});
