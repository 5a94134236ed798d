import { describe, expect, test } from "vitest";

import { AnnotationSession } from "../src/session";
import { Point } from "../src/types";

function freshSession(): AnnotationSession {
  return new AnnotationSession("plan.png", 160, 96, "pat");
}

/** Click the center of an image pixel through the current viewport. */
function clickPixel(session: AnnotationSession, row: number, col: number) {
  const at = session.imageToView([row, col]);
  return session.clickView(at.x, at.y);
}

describe("two-click drawing", () => {
  test("two clicks append one segment", () => {
    const s = freshSession();
    expect(clickPixel(s, 10, 5)).toEqual({ kind: "armed", at: [10, 5] });
    expect(clickPixel(s, 10, 120)).toEqual({ kind: "added", index: 0 });
    expect(s.segments).toEqual([{ p1: [10, 5], p2: [10, 120] }]);
    expect(s.pending).toBeNull();
  });

  test("clicking the armed pixel again is rejected and stays armed", () => {
    const s = freshSession();
    clickPixel(s, 3, 3);
    const result = clickPixel(s, 3, 3);
    expect(result.kind).toBe("rejected");
    expect(s.pending).toEqual([3, 3]);
    expect(s.segments).toHaveLength(0);
    expect(clickPixel(s, 3, 40).kind).toBe("added");
  });

  test("clicks outside the raster clamp to the nearest border pixel", () => {
    const s = freshSession();
    expect(s.viewToImage(-25, -3)).toEqual([0, 0]);
    expect(s.viewToImage(10_000, 14)).toEqual([14, 159]);
    expect(s.viewToImage(4, 10_000)).toEqual([95, 4]);
  });

  test("two distinct clicks that clamp to one pixel are rejected", () => {
    const s = freshSession();
    expect(s.clickView(-5, -5).kind).toBe("armed");
    expect(s.clickView(-80, -1).kind).toBe("rejected");
  });

  test("cancelPending disarms the first click", () => {
    const s = freshSession();
    clickPixel(s, 1, 1);
    s.cancelPending();
    expect(s.pending).toBeNull();
    expect(clickPixel(s, 2, 2).kind).toBe("armed");
  });
});

describe("viewport mapping", () => {
  test("pixel centers map back exactly under awkward zoom factors", () => {
    const s = freshSession();
    const pixels: Point[] = [[0, 0], [95, 159], [47, 80], [1, 158]];
    for (const zoom of [0.25, 0.3, 0.5, 1, 1.25, 2, 3, 7, 16]) {
      s.setZoom(zoom);
      s.pan = { x: -13.7, y: 41.2 };
      for (const [row, col] of pixels) {
        const at = s.imageToView([row, col]);
        expect(s.viewToImage(at.x, at.y)).toEqual([row, col]);
      }
    }
  });

  test("pixels are half-open: the right/bottom edge belongs to the next one", () => {
    const s = freshSession();
    s.setZoom(4);
    expect(s.viewToImage(8, 0)).toEqual([0, 2]);
    expect(s.viewToImage(7.999, 0)).toEqual([0, 1]);
  });

  test("zoom is clamped to a sane range and rejects non-finite input", () => {
    const s = freshSession();
    s.setZoom(1e9);
    expect(s.zoom).toBe(32);
    s.setZoom(0);
    expect(s.zoom).toBe(0.125);
    expect(() => s.setZoom(Number.NaN)).toThrow(RangeError);
  });

  test("zoomAround keeps the anchored image point stationary", () => {
    const s = freshSession();
    s.setZoom(2);
    s.pan = { x: 30, y: 10 };
    const before = s.viewToImage(200, 150);
    s.zoomAround(200, 150, 5);
    expect(s.viewToImage(200, 150)).toEqual(before);
  });

  test("changing zoom never touches stored segments", () => {
    const s = freshSession();
    clickPixel(s, 10, 5);
    clickPixel(s, 40, 90);
    const snapshot = s.segments;
    s.setZoom(7);
    s.pan = { x: 200, y: -50 };
    expect(s.segments).toBe(snapshot);
    expect(s.segments).toEqual([{ p1: [10, 5], p2: [40, 90] }]);
  });
});

describe("history", () => {
  function draw(s: AnnotationSession, a: Point, b: Point): void {
    expect(s.clickImage(a[0], a[1]).kind).toBe("armed");
    expect(s.clickImage(b[0], b[1]).kind).toBe("added");
  }

  test("add then undo leaves an empty list", () => {
    const s = freshSession();
    draw(s, [1, 1], [1, 50]);
    expect(s.undo()).toBe(true);
    expect(s.segments).toEqual([]);
    expect(s.undo()).toBe(false);
  });

  test("undo/redo replays every intermediate segment list exactly", () => {
    const s = freshSession();
    const states: (readonly unknown[])[] = [s.segments.slice()];
    draw(s, [1, 1], [1, 50]);
    states.push(s.segments.slice());
    draw(s, [5, 1], [5, 50]);
    states.push(s.segments.slice());
    s.select(0);
    s.deleteSelected();
    states.push(s.segments.slice());
    draw(s, [9, 1], [9, 50]);
    states.push(s.segments.slice());

    for (let depth = states.length - 2; depth >= 0; depth--) {
      expect(s.undo()).toBe(true);
      expect(s.segments).toEqual(states[depth]);
    }
    for (let depth = 1; depth < states.length; depth++) {
      expect(s.redo()).toBe(true);
      expect(s.segments).toEqual(states[depth]);
    }
    expect(s.redo()).toBe(false);
  });

  test("a new action clears the redo branch", () => {
    const s = freshSession();
    draw(s, [1, 1], [1, 50]);
    draw(s, [5, 1], [5, 50]);
    s.undo();
    draw(s, [9, 1], [9, 50]);
    expect(s.canRedo).toBe(false);
    expect(s.segments).toEqual([
      { p1: [1, 1], p2: [1, 50] },
      { p1: [9, 1], p2: [9, 50] },
    ]);
  });

  test("deleteSelected without a selection is a no-op", () => {
    const s = freshSession();
    draw(s, [1, 1], [1, 50]);
    expect(s.deleteSelected()).toBe(false);
    expect(s.segments).toHaveLength(1);
    expect(s.canUndo).toBe(true);
    s.select(0);
    expect(s.deleteSelected()).toBe(true);
    expect(s.segments).toHaveLength(0);
  });

  test("select validates the index", () => {
    const s = freshSession();
    expect(() => s.select(0)).toThrow(RangeError);
    draw(s, [1, 1], [1, 50]);
    s.select(0);
    expect(s.selected).toBe(0);
    s.select(null);
    expect(s.selected).toBeNull();
  });
});

describe("hitTest", () => {
  test("finds the nearest segment within view tolerance", () => {
    const s = freshSession();
    s.clickImage(10, 10);
    s.clickImage(10, 100);
    s.clickImage(50, 10);
    s.clickImage(50, 100);
    s.setZoom(2);
    const onFirst = s.imageToView([10, 55]);
    expect(s.hitTest(onFirst.x, onFirst.y + 3)).toBe(0);
    const nowhere = s.imageToView([30, 55]);
    expect(s.hitTest(nowhere.x, nowhere.y)).toBeNull();
  });
});
