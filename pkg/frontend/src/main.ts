/** DOM bootstrap: wires file pickers, canvas events, keyboard shortcuts,
 * and the export download to an AnnotationSession. */
import { drawScene, SceneLayers } from "./render";
import {
  exportGroundTruth,
  parseDetectionSegments,
  parseGroundTruth,
  SchemaError,
} from "./schema";
import { AnnotationSession, ClickResult } from "./session";
import "./style.css";

function must<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

const canvas = must<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d");
if (ctx === null) {
  throw new Error("2d canvas context unavailable");
}

const imageInput = must<HTMLInputElement>("image-input");
const importInput = must<HTMLInputElement>("import-input");
const overlayInput = must<HTMLInputElement>("overlay-input");
const annotatorInput = must<HTMLInputElement>("annotator");
const exportButton = must<HTMLButtonElement>("export");
const undoButton = must<HTMLButtonElement>("undo");
const redoButton = must<HTMLButtonElement>("redo");
const deleteButton = must<HTMLButtonElement>("delete");
const overlayToggle = must<HTMLInputElement>("overlay-toggle");
const zoomInButton = must<HTMLButtonElement>("zoom-in");
const zoomOutButton = must<HTMLButtonElement>("zoom-out");
const zoomResetButton = must<HTMLButtonElement>("zoom-reset");
const statusBar = must<HTMLElement>("status");
const banner = must<HTMLElement>("banner");

let session: AnnotationSession | null = null;
const layers: SceneLayers = { image: null, detection: null, showDetection: true };
let bannerTimer: number | undefined;

function notice(text: string, isError = false): void {
  banner.textContent = text;
  banner.className = isError ? "banner error" : "banner info";
  window.clearTimeout(bannerTimer);
  bannerTimer = window.setTimeout(() => {
    banner.textContent = "";
    banner.className = "banner";
  }, 4000);
}

function refresh(): void {
  if (session !== null) {
    drawScene(ctx!, session, layers);
  } else {
    ctx!.fillStyle = "#20242b";
    ctx!.fillRect(0, 0, canvas.width, canvas.height);
  }
  exportButton.disabled = session === null || session.segments.length === 0;
  undoButton.disabled = session === null || !session.canUndo;
  redoButton.disabled = session === null || !session.canRedo;
  deleteButton.disabled = session === null || session.selected === null;
  if (session === null) {
    statusBar.textContent = "load a PNG to start annotating";
    return;
  }
  const pct = Math.round(session.zoom * 100);
  statusBar.textContent =
    `${session.imageName}  ${session.width}x${session.height}  ` +
    `segments: ${session.segments.length}  zoom: ${pct}%`;
}

function canvasPos(event: MouseEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return { x: event.clientX - rect.left, y: event.clientY - rect.top };
}

imageInput.addEventListener("change", () => {
  const file = imageInput.files?.[0];
  if (file === undefined) return;
  createImageBitmap(file)
    .then((bitmap) => {
      session = new AnnotationSession(file.name, bitmap.width, bitmap.height,
        annotatorInput.value);
      layers.image = bitmap;
      layers.detection = null;
      notice(`loaded ${file.name} (${bitmap.width}x${bitmap.height})`);
      refresh();
    })
    .catch(() => notice(`${file.name}: not a decodable image`, true));
});

importInput.addEventListener("change", () => {
  const file = importInput.files?.[0];
  if (file === undefined) return;
  if (session === null) {
    notice("load the image before importing its annotations", true);
    return;
  }
  file.text().then((text) => {
    try {
      const parsed = parseGroundTruth(JSON.parse(text));
      session!.loadGroundTruth(parsed);
      notice(`imported ${parsed.segments.length} segments`);
    } catch (err) {
      notice(describe(err), true);
    }
    refresh();
  });
});

overlayInput.addEventListener("change", () => {
  const file = overlayInput.files?.[0];
  if (file === undefined) return;
  file.text().then((text) => {
    try {
      layers.detection = parseDetectionSegments(JSON.parse(text));
      layers.showDetection = true;
      overlayToggle.checked = true;
      notice(`overlay: ${layers.detection.length} detected segments`);
    } catch (err) {
      notice(describe(err), true);
    }
    refresh();
  });
});

function describe(err: unknown): string {
  if (err instanceof SchemaError) return `schema: ${err.message}`;
  if (err instanceof SyntaxError) return `not valid JSON: ${err.message}`;
  return String(err);
}

exportButton.addEventListener("click", () => {
  if (session === null) return;
  session.annotator = annotatorInput.value;
  let text: string;
  try {
    text = exportGroundTruth(session);
  } catch (err) {
    notice(describe(err), true);
    return;
  }
  const stem = session.imageName.replace(/\.[^.]+$/, "");
  const blob = new Blob([text], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = `${stem}.gt.json`;
  link.click();
  URL.revokeObjectURL(link.href);
  notice(`exported ${session.segments.length} segments`);
});

canvas.addEventListener("click", (event) => {
  if (session === null || panning) return;
  const { x, y } = canvasPos(event);
  if (event.shiftKey) {
    session.select(session.hitTest(x, y));
    refresh();
    return;
  }
  const result: ClickResult = session.clickView(x, y);
  if (result.kind === "rejected") {
    notice(result.reason, true);
  } else if (result.kind === "added") {
    session.select(result.index);
  }
  refresh();
});

let panning = false;
let panAnchor = { x: 0, y: 0 };

canvas.addEventListener("mousedown", (event) => {
  if (session === null) return;
  if (event.button === 1 || event.altKey) {
    panning = true;
    panAnchor = canvasPos(event);
    event.preventDefault();
  }
});

canvas.addEventListener("mousemove", (event) => {
  if (session === null) return;
  const pos = canvasPos(event);
  if (panning) {
    session.pan.x += pos.x - panAnchor.x;
    session.pan.y += pos.y - panAnchor.y;
    panAnchor = pos;
    refresh();
    return;
  }
  const [row, col] = session.viewToImage(pos.x, pos.y);
  const pct = Math.round(session.zoom * 100);
  statusBar.textContent =
    `${session.imageName}  ${session.width}x${session.height}  ` +
    `segments: ${session.segments.length}  zoom: ${pct}%  pixel: (${row}, ${col})`;
});

window.addEventListener("mouseup", () => {
  panning = false;
});

canvas.addEventListener("wheel", (event) => {
  if (session === null) return;
  event.preventDefault();
  const pos = canvasPos(event);
  const factor = event.deltaY < 0 ? 1.25 : 0.8;
  session.zoomAround(pos.x, pos.y, session.zoom * factor);
  refresh();
});

function zoomStep(factor: number): void {
  if (session === null) return;
  session.zoomAround(canvas.width / 2, canvas.height / 2, session.zoom * factor);
  refresh();
}

zoomInButton.addEventListener("click", () => zoomStep(1.25));
zoomOutButton.addEventListener("click", () => zoomStep(0.8));
zoomResetButton.addEventListener("click", () => {
  if (session === null) return;
  session.setZoom(1);
  session.pan = { x: 0, y: 0 };
  refresh();
});

undoButton.addEventListener("click", () => {
  session?.undo();
  refresh();
});
redoButton.addEventListener("click", () => {
  session?.redo();
  refresh();
});
deleteButton.addEventListener("click", () => {
  session?.deleteSelected();
  refresh();
});
overlayToggle.addEventListener("change", () => {
  layers.showDetection = overlayToggle.checked;
  refresh();
});

window.addEventListener("keydown", (event) => {
  if (session === null) return;
  const target = event.target as HTMLElement | null;
  if (target !== null && target.tagName === "INPUT" && target !== overlayToggle) return;
  if (event.key === "Escape") {
    session.cancelPending();
    session.select(null);
  } else if (event.key === "Delete" || event.key === "Backspace") {
    session.deleteSelected();
  } else if ((event.ctrlKey || event.metaKey) && event.key.toLowerCase() === "z") {
    if (event.shiftKey) {
      session.redo();
    } else {
      session.undo();
    }
  } else if ((event.ctrlKey || event.metaKey) && event.key.toLowerCase() === "y") {
    session.redo();
  } else {
    return;
  }
  event.preventDefault();
  refresh();
});

refresh();
