/** Canonical JSON writer.
 *
 * Produces the exact byte form the detector CLI writes and reads: two-space
 * indent, keys in insertion order, floats rounded to three decimals, all
 * non-ASCII escaped, and a trailing newline.  Equal documents serialize to
 * equal bytes, so export -> import -> export is a fixed point and files
 * made here interchange with files made by the command-line tools.
 */

/** Marks a number that must be written in float form ("1.0", not "1"). */
export class Float {
  constructor(readonly value: number) {}
}

export type Json =
  | null
  | boolean
  | number
  | string
  | Float
  | readonly Json[]
  | { readonly [key: string]: Json };

/** Round to three decimals, ties to the even thousandth. */
export function round3(x: number): number {
  // x * 1000 is exact whenever a genuine tie is possible (x a small
  // dyadic rational), so the tie branch never fires spuriously
  const scaled = x * 1000;
  const lo = Math.floor(scaled);
  const frac = scaled - lo;
  if (frac > 0.5) return (lo + 1) / 1000;
  if (frac < 0.5) return lo / 1000;
  return (lo % 2 === 0 ? lo : lo + 1) / 1000;
}

/** Coordinate pair for serialization: integers when both values are whole. */
export function coordPair(p: readonly [number, number]): Json[] {
  return Number.isInteger(p[0]) && Number.isInteger(p[1])
    ? [p[0], p[1]]
    : [new Float(p[0]), new Float(p[1])];
}

function escapeNonAscii(jsonText: string): string {
  return jsonText.replace(/[-￿]/g, (ch) => {
    return "\\u" + ch.charCodeAt(0).toString(16).padStart(4, "0");
  });
}

function formatFloat(n: number): string {
  if (!Number.isFinite(n)) {
    throw new RangeError("cannot serialize a non-finite number");
  }
  const text = String(n);
  if (Number.isInteger(n) && !text.includes("e") && !text.includes("E")) {
    return text + ".0";
  }
  return text;
}

function write(value: Json, depth: number): string {
  if (value === null) return "null";
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new TypeError(`fractional number ${value} must be wrapped in Float`);
    }
    return String(value);
  }
  if (value instanceof Float) return formatFloat(round3(value.value));
  if (typeof value === "string") return escapeNonAscii(JSON.stringify(value));
  const inner = "  ".repeat(depth + 1);
  const outer = "  ".repeat(depth);
  if (Array.isArray(value)) {
    if (value.length === 0) return "[]";
    const items = value.map((v) => inner + write(v, depth + 1));
    return "[\n" + items.join(",\n") + "\n" + outer + "]";
  }
  const record = value as { readonly [key: string]: Json };
  const keys = Object.keys(record);
  if (keys.length === 0) return "{}";
  const items = keys.map((k) => {
    return inner + escapeNonAscii(JSON.stringify(k)) + ": " + write(record[k], depth + 1);
  });
  return "{\n" + items.join(",\n") + "\n" + outer + "}";
}

export function canonicalJson(value: Json): string {
  return write(value, 0) + "\n";
}
