/** Annotation session state: the segment list, the two-click drawing
 * workflow, selection, undo/redo, and the viewport transform.
 *
 * Segment coordinates live in integer image pixels (row, col).  Zoom and
 * pan only change how clicks are mapped into that frame and how the scene
 * is drawn; they never touch stored coordinates, so a segment drawn at
 * pixel (r, c) exports as exactly (r, c) at any magnification.
 */
import { GroundTruthFile } from "./schema";
import { Point, samePoint, Segment } from "./types";

export type ClickResult =
  | { kind: "armed"; at: Point }
  | { kind: "added"; index: number }
  | { kind: "rejected"; reason: string };

const MIN_ZOOM = 0.125;
const MAX_ZOOM = 32;

export class AnnotationSession {
  imageName: string;
  readonly width: number;
  readonly height: number;
  annotator: string;
  created: string;

  zoom = 1;
  pan = { x: 0, y: 0 };
  selected: number | null = null;

  private items: Segment[] = [];
  private firstClick: Point | null = null;
  private past: Segment[][] = [];
  private future: Segment[][] = [];

  constructor(imageName: string, width: number, height: number, annotator = "") {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
      throw new RangeError(`image dimensions ${width}x${height} must be positive integers`);
    }
    this.imageName = imageName;
    this.width = width;
    this.height = height;
    this.annotator = annotator;
    this.created = new Date().toISOString();
  }

  get segments(): readonly Segment[] {
    return this.items;
  }

  get pending(): Point | null {
    return this.firstClick;
  }

  get canUndo(): boolean {
    return this.past.length > 0;
  }

  get canRedo(): boolean {
    return this.future.length > 0;
  }

  /** View position (canvas css px) to the image pixel under it, clamped
   * to the nearest border pixel when the click lands outside. */
  viewToImage(x: number, y: number): Point {
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new RangeError("view coordinates must be finite");
    }
    const col = Math.floor((x - this.pan.x) / this.zoom);
    const row = Math.floor((y - this.pan.y) / this.zoom);
    return [
      Math.min(this.height - 1, Math.max(0, row)),
      Math.min(this.width - 1, Math.max(0, col)),
    ];
  }

  /** Center of an image pixel in view coordinates. */
  imageToView(p: Point): { x: number; y: number } {
    return {
      x: this.pan.x + (p[1] + 0.5) * this.zoom,
      y: this.pan.y + (p[0] + 0.5) * this.zoom,
    };
  }

  clickView(x: number, y: number): ClickResult {
    const [row, col] = this.viewToImage(x, y);
    return this.clickImage(row, col);
  }

  /** Two-click workflow: first click arms an endpoint, second commits the
   * segment.  A second click on the armed pixel is rejected (the armed
   * point stays, so the user can pick a different far end). */
  clickImage(row: number, col: number): ClickResult {
    const p: Point = [row, col];
    if (this.firstClick === null) {
      this.firstClick = p;
      return { kind: "armed", at: p };
    }
    if (samePoint(this.firstClick, p)) {
      return { kind: "rejected", reason: "segment endpoints coincide" };
    }
    this.record();
    this.items.push({ p1: this.firstClick, p2: p });
    this.firstClick = null;
    return { kind: "added", index: this.items.length - 1 };
  }

  cancelPending(): void {
    this.firstClick = null;
  }

  select(index: number | null): void {
    if (index !== null && (index < 0 || index >= this.items.length)) {
      throw new RangeError(`no segment ${index}`);
    }
    this.selected = index;
  }

  /** Index of the segment nearest to a view position, or null when none
   * comes within `toleranceView` css pixels. */
  hitTest(x: number, y: number, toleranceView = 6): number | null {
    let best: number | null = null;
    let bestDist = toleranceView;
    for (let i = 0; i < this.items.length; i++) {
      const a = this.imageToView(this.items[i].p1);
      const b = this.imageToView(this.items[i].p2);
      const d = pointSegmentDistance(x, y, a.x, a.y, b.x, b.y);
      if (d <= bestDist) {
        bestDist = d;
        best = i;
      }
    }
    return best;
  }

  deleteSelected(): boolean {
    if (this.selected === null) {
      return false;
    }
    this.record();
    this.items.splice(this.selected, 1);
    this.selected = null;
    return true;
  }

  undo(): boolean {
    const prev = this.past.pop();
    if (prev === undefined) {
      return false;
    }
    this.future.push(this.items);
    this.items = prev;
    this.afterHistoryJump();
    return true;
  }

  redo(): boolean {
    const next = this.future.pop();
    if (next === undefined) {
      return false;
    }
    this.past.push(this.items);
    this.items = next;
    this.afterHistoryJump();
    return true;
  }

  /** Replace the whole segment list (import path); one undo step. */
  loadGroundTruth(file: GroundTruthFile): void {
    this.record();
    this.items = file.segments.slice();
    this.imageName = file.image;
    this.annotator = file.annotator;
    this.created = file.created;
    this.afterHistoryJump();
  }

  setZoom(z: number): void {
    if (!Number.isFinite(z)) {
      throw new RangeError("zoom must be finite");
    }
    this.zoom = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, z));
  }

  /** Rescale about a view-space anchor so the pixel under it stays put. */
  zoomAround(x: number, y: number, z: number): void {
    const old = this.zoom;
    this.setZoom(z);
    const scale = this.zoom / old;
    this.pan.x = x - (x - this.pan.x) * scale;
    this.pan.y = y - (y - this.pan.y) * scale;
  }

  private record(): void {
    this.past.push(this.items.slice());
    this.future = [];
  }

  private afterHistoryJump(): void {
    this.firstClick = null;
    if (this.selected !== null && this.selected >= this.items.length) {
      this.selected = null;
    }
  }
}

function pointSegmentDistance(
  px: number, py: number, ax: number, ay: number, bx: number, by: number,
): number {
  const dx = bx - ax;
  const dy = by - ay;
  const lengthSq = dx * dx + dy * dy;
  let t = 0;
  if (lengthSq > 0) {
    t = Math.min(1, Math.max(0, ((px - ax) * dx + (py - ay) * dy) / lengthSq));
  }
  return Math.hypot(px - (ax + t * dx), py - (ay + t * dy));
}
