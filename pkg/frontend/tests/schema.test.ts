import { describe, expect, test } from "vitest";

import {
  detectionDoc,
  exportGroundTruth,
  parseDetectionSegments,
  parseGroundTruth,
  SchemaError,
} from "../src/schema";
import { canonicalJson } from "../src/canon";
import { AnnotationSession } from "../src/session";

function sessionWith(segments: [number, number, number, number][]): AnnotationSession {
  const s = new AnnotationSession("plan.png", 160, 96, "pat");
  s.created = "2026-08-14T00:00:00Z";
  for (const [r1, c1, r2, c2] of segments) {
    s.clickImage(r1, c1);
    s.clickImage(r2, c2);
  }
  return s;
}

describe("exportGroundTruth", () => {
  test("emits the exact canonical byte form", () => {
    const s = sessionWith([[5, 1, 5, 9]]);
    expect(exportGroundTruth(s)).toBe(
      "{\n" +
        '  "image": "plan.png",\n' +
        '  "annotator": "pat",\n' +
        '  "created": "2026-08-14T00:00:00Z",\n' +
        '  "segments": [\n' +
        "    {\n" +
        '      "p1": [\n        5,\n        1\n      ],\n' +
        '      "p2": [\n        5,\n        9\n      ]\n' +
        "    }\n" +
        "  ]\n" +
        "}\n",
    );
  });

  test("an empty session refuses to export", () => {
    const s = sessionWith([]);
    expect(() => exportGroundTruth(s)).toThrow(/no segments/);
  });

  test("export -> import -> export is a fixed point, floats included", () => {
    const s = sessionWith([[5, 1, 5, 9]]);
    const raw =
      '{"image": "plan.png", "segments": [{"p1": [5.5, 1], "p2": [0.125, 2]},' +
      ' {"p1": [3, 4], "p2": [9, 4]}]}';
    s.loadGroundTruth(parseGroundTruth(JSON.parse(raw)));
    const once = exportGroundTruth(s);
    const again = sessionWith([]);
    again.loadGroundTruth(parseGroundTruth(JSON.parse(once)));
    expect(exportGroundTruth(again)).toBe(once);
    expect(once).toContain('"p2": [\n        0.125,\n        2.0\n      ]');
  });
});

describe("parseGroundTruth", () => {
  test("reads segments and defaults the optional metadata", () => {
    const parsed = parseGroundTruth({
      image: "a.png",
      segments: [{ p1: [0, 0], p2: [0, 9] }],
    });
    expect(parsed.annotator).toBe("");
    expect(parsed.created).toBe("");
    expect(parsed.segments).toEqual([{ p1: [0, 0], p2: [0, 9] }]);
  });

  test.each([
    [[], "root: expected an object"],
    [{}, "root.image: missing required field"],
    [{ image: 7, segments: [] }, "root.image: expected a string"],
    [{ image: "a" }, "root.segments: missing required field"],
    [{ image: "a", segments: [] }, "root.segments: expected a non-empty array"],
    [{ image: "a", segments: [7] }, "segments[0]: expected an object"],
    [
      { image: "a", segments: [{ p1: [0, 0] }] },
      "segments[0].p2: missing required field",
    ],
    [
      { image: "a", segments: [{ p1: [0, 0], p2: [1, true] }] },
      "segments[0].p2: expected [row, col]",
    ],
    [
      { image: "a", segments: [{ p1: [0, 0], p2: [1, 2, 3] }] },
      "segments[0].p2: expected [row, col]",
    ],
    [
      { image: "a", segments: [{ p1: [2, 2], p2: [2, 2] }] },
      "segments[0]: zero-length segment",
    ],
    [
      { image: "a", segments: [{ p1: [0, 0], p2: [0, 1] }], annotator: 5 },
      "root.annotator: expected a string",
    ],
    [
      { image: "a", segments: [{ p1: [0, 0], p2: [0, 1] }], created: 5 },
      "root.created: expected a string",
    ],
  ])("names the offending field: %j", (data, message) => {
    expect(() => parseGroundTruth(data)).toThrow(SchemaError);
    expect(() => parseGroundTruth(data)).toThrow(message);
  });
});

describe("parseDetectionSegments", () => {
  test("an empty detection is a valid annotation-only overlay", () => {
    expect(parseDetectionSegments({ segments: [] })).toEqual([]);
  });

  test("a plus-sign detection yields its four arms", () => {
    const doc = {
      width: 11,
      height: 11,
      segments: [
        { p1: [5, 5], p2: [5, 1] },
        { p1: [5, 5], p2: [5, 9] },
        { p1: [5, 5], p2: [1, 5] },
        { p1: [5, 5], p2: [9, 5] },
      ],
    };
    expect(parseDetectionSegments(doc)).toHaveLength(4);
  });

  test("a detection equal to the annotation superimposes exactly", () => {
    const s = sessionWith([[5, 1, 5, 9], [1, 2, 9, 2]]);
    const doc = JSON.parse(canonicalJson(detectionDoc(s.segments)));
    expect(parseDetectionSegments(doc)).toEqual(s.segments);
  });

  test("schema mismatches are rejected with the field path", () => {
    expect(() => parseDetectionSegments({ paths: [] })).toThrow(
      "root.segments: missing required field",
    );
    expect(() => parseDetectionSegments({ segments: 4 })).toThrow(
      "root.segments: expected an array",
    );
    expect(() => parseDetectionSegments([1, 2])).toThrow("root: expected an object");
  });
});
