/** Ground-truth and detection JSON: builders, parsers, validation.
 *
 * Field names, key order, and error wording follow the detector CLI so the
 * two sides can exchange files without translation.  Parse errors name the
 * offending field ("segments[3].p2: expected [row, col]") because that is
 * what ends up in the banner the user reads.
 */
import { canonicalJson, coordPair, Json } from "./canon";
import { Point, samePoint, Segment } from "./types";

export class SchemaError extends Error {}

export interface GroundTruthFile {
  image: string;
  annotator: string;
  created: string;
  segments: Segment[];
}

export interface GroundTruthSource {
  imageName: string;
  annotator: string;
  created: string;
  segments: readonly Segment[];
}

export function groundTruthDoc(source: GroundTruthSource): Json {
  return {
    image: source.imageName,
    annotator: source.annotator,
    created: source.created,
    segments: source.segments.map((s) => ({
      p1: coordPair(s.p1),
      p2: coordPair(s.p2),
    })),
  };
}

export function exportGroundTruth(source: GroundTruthSource): string {
  if (source.segments.length === 0) {
    throw new Error("nothing to export: the session has no segments");
  }
  return canonicalJson(groundTruthDoc(source));
}

/** Minimal detection document holding only segments, for scoring runs. */
export function detectionDoc(segments: readonly Segment[]): Json {
  return {
    segments: segments.map((s) => ({ p1: coordPair(s.p1), p2: coordPair(s.p2) })),
  };
}

function requireField(obj: Record<string, unknown>, key: string, where: string): unknown {
  if (!(key in obj)) {
    throw new SchemaError(`${where}.${key}: missing required field`);
  }
  return obj[key];
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function parsePoint(value: unknown, where: string): Point {
  if (
    !Array.isArray(value) ||
    value.length !== 2 ||
    !value.every((v) => typeof v === "number" && Number.isFinite(v))
  ) {
    throw new SchemaError(`${where}: expected [row, col]`);
  }
  return [value[0], value[1]];
}

function parseSegment(entry: unknown, where: string): Segment {
  if (!isRecord(entry)) {
    throw new SchemaError(`${where}: expected an object`);
  }
  const p1 = parsePoint(requireField(entry, "p1", where), `${where}.p1`);
  const p2 = parsePoint(requireField(entry, "p2", where), `${where}.p2`);
  if (samePoint(p1, p2)) {
    throw new SchemaError(`${where}: zero-length segment`);
  }
  return { p1, p2 };
}

export function parseGroundTruth(data: unknown): GroundTruthFile {
  if (!isRecord(data)) {
    throw new SchemaError("root: expected an object");
  }
  const image = requireField(data, "image", "root");
  if (typeof image !== "string") {
    throw new SchemaError("root.image: expected a string");
  }
  const rawSegments = requireField(data, "segments", "root");
  if (!Array.isArray(rawSegments) || rawSegments.length === 0) {
    throw new SchemaError("root.segments: expected a non-empty array");
  }
  const segments = rawSegments.map((entry, i) => parseSegment(entry, `segments[${i}]`));
  const annotator = data["annotator"] ?? "";
  const created = data["created"] ?? "";
  if (typeof annotator !== "string") {
    throw new SchemaError("root.annotator: expected a string");
  }
  if (typeof created !== "string") {
    throw new SchemaError("root.created: expected a string");
  }
  return { image, annotator, created, segments };
}

/** Segments of a detection document; width/stats/paths are ignored here. */
export function parseDetectionSegments(data: unknown): Segment[] {
  if (!isRecord(data)) {
    throw new SchemaError("root: expected an object");
  }
  const raw = requireField(data, "segments", "root");
  if (!Array.isArray(raw)) {
    throw new SchemaError("root.segments: expected an array");
  }
  return raw.map((entry, i) => parseSegment(entry, `segments[${i}]`));
}
