/** Image-frame geometry shared by every module: (row, col), row grows down. */
export type Point = readonly [number, number];

export interface Segment {
  readonly p1: Point;
  readonly p2: Point;
}

export function samePoint(a: Point, b: Point): boolean {
  return a[0] === b[0] && a[1] === b[1];
}
