/** Canvas drawing for the annotator: raster, annotation layer, detection
 * overlay, pending endpoint, selection highlight. */
import { AnnotationSession } from "./session";
import { Segment } from "./types";

export const ANNOTATION_COLOR = "#3cb44b";
export const DETECTION_COLOR = "#e6194b";
export const SELECTION_COLOR = "#ffe119";

export interface SceneLayers {
  image: CanvasImageSource | null;
  detection: readonly Segment[] | null;
  showDetection: boolean;
}

export function drawScene(
  ctx: CanvasRenderingContext2D,
  session: AnnotationSession,
  layers: SceneLayers,
): void {
  const canvas = ctx.canvas;
  ctx.save();
  ctx.fillStyle = "#20242b";
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  const z = session.zoom;
  if (layers.image !== null) {
    ctx.imageSmoothingEnabled = false;
    ctx.drawImage(
      layers.image,
      session.pan.x,
      session.pan.y,
      session.width * z,
      session.height * z,
    );
  } else {
    ctx.strokeStyle = "#4a5160";
    ctx.strokeRect(session.pan.x, session.pan.y, session.width * z, session.height * z);
  }

  if (layers.showDetection && layers.detection !== null) {
    drawSegments(ctx, session, layers.detection, DETECTION_COLOR, 2);
  }
  drawSegments(ctx, session, session.segments, ANNOTATION_COLOR, 2);

  if (session.selected !== null && session.selected < session.segments.length) {
    drawSegments(ctx, session, [session.segments[session.selected]], SELECTION_COLOR, 3);
  }

  if (session.pending !== null) {
    const at = session.imageToView(session.pending);
    ctx.fillStyle = SELECTION_COLOR;
    ctx.beginPath();
    ctx.arc(at.x, at.y, 4, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.restore();
}

function drawSegments(
  ctx: CanvasRenderingContext2D,
  session: AnnotationSession,
  segments: readonly Segment[],
  color: string,
  width: number,
): void {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.lineCap = "round";
  for (const s of segments) {
    const a = session.imageToView(s.p1);
    const b = session.imageToView(s.p2);
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }
}
