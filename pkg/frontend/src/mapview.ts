// Canvas renderer: offline tile-grid fallback, point dots, label rectangles.
// World coordinates have y growing north; the canvas flips to screen space.

import type { AnimatedLabel } from "./animator";
import type { LabelingJson, RectJson, ViewJson } from "./types";

export interface Draw2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  globalAlpha: number;
  lineWidth: number;
  font: string;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface ScreenRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

const TILE = 256;

export class MapView {
  constructor(
    public width: number,
    public height: number,
    public tileUrlTemplate: string | null = null,
  ) {}

  /** World rect (y up) to screen rect (y down), anchored at the viewport. */
  toScreen(viewport: RectJson, rect: RectJson): ScreenRect {
    return {
      x: rect.min_x - viewport.min_x,
      y: viewport.min_y + viewport.height - (rect.min_y + rect.height),
      w: rect.width,
      h: rect.height,
    };
  }

  pointToScreen(viewport: RectJson, x: number, y: number): [number, number] {
    return [x - viewport.min_x, viewport.min_y + viewport.height - y];
  }

  truncate(text: string, rectWidth: number): string {
    const maxChars = Math.max(1, Math.floor(rectWidth / 7));
    if (text.length <= maxChars) return text;
    return text.slice(0, Math.max(1, maxChars - 1)) + "…";
  }

  renderBackground(ctx: Draw2D, viewport: RectJson): void {
    // offline fallback: solid ground with a tile grid, so tests need no network
    ctx.globalAlpha = 1;
    ctx.fillStyle = "#dfe8dc";
    ctx.fillRect(0, 0, this.width, this.height);
    ctx.strokeStyle = "#c4d0c0";
    ctx.lineWidth = 1;
    const x0 = Math.floor(viewport.min_x / TILE) * TILE;
    const y0 = Math.floor(viewport.min_y / TILE) * TILE;
    for (let wx = x0; wx <= viewport.min_x + viewport.width; wx += TILE) {
      for (let wy = y0; wy <= viewport.min_y + viewport.height; wy += TILE) {
        const [sx, sy] = this.pointToScreen(viewport, wx, wy + TILE);
        ctx.strokeRect(sx, sy, TILE, TILE);
      }
    }
  }

  renderDots(ctx: Draw2D, viewport: RectJson, labeling: LabelingJson): void {
    ctx.fillStyle = "#2c6fbb";
    for (const info of Object.values(labeling)) {
      const [sx, sy] = this.pointToScreen(viewport, info.anchor[0], info.anchor[1]);
      ctx.beginPath();
      ctx.arc(sx, sy, 3, 0, Math.PI * 2);
      ctx.fill();
    }
  }

  renderLabels(
    ctx: Draw2D,
    viewport: RectJson,
    labels: AnimatedLabel[],
    texts: Record<string, string>,
  ): void {
    ctx.font = "12px sans-serif";
    for (const label of labels) {
      const s = this.toScreen(viewport, label.rect);
      ctx.globalAlpha = label.opacity;
      ctx.fillStyle = label.highlight ? "#ffd4d4" : "#ffffff";
      ctx.fillRect(s.x, s.y, s.w, s.h);
      ctx.strokeStyle = label.highlight ? "#cc2222"
        : label.phase === "moving" ? "#2c6fbb" : "#666666";
      ctx.lineWidth = label.highlight ? 2 : 1;
      ctx.strokeRect(s.x, s.y, s.w, s.h);
      ctx.fillStyle = "#222222";
      const text = texts[label.labelId] ?? label.labelId;
      ctx.fillText(this.truncate(text, s.w), s.x + 4, s.y + 14);
    }
    ctx.globalAlpha = 1;
  }

  render(
    ctx: Draw2D,
    view: ViewJson,
    labels: AnimatedLabel[],
    labeling: LabelingJson,
  ): void {
    const texts: Record<string, string> = {};
    for (const [pid, info] of Object.entries(labeling)) texts[pid] = info.text;
    ctx.clearRect(0, 0, this.width, this.height);
    this.renderBackground(ctx, view.viewport);
    this.renderDots(ctx, view.viewport, labeling);
    this.renderLabels(ctx, view.viewport, labels, texts);
  }
}

/** Static labeling rendered as idle animated labels (no plan in flight). */
export function labelsFromLabeling(labeling: LabelingJson): AnimatedLabel[] {
  return Object.entries(labeling).map(([pid, info]) => ({
    labelId: pid,
    rect: info.rect,
    phase: "idle" as const,
    opacity: 1,
    highlight: false,
  }));
}
