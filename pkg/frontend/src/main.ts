// Browser entry point: wires the script editor, mode switch, keyboard,
// canvas, and trace import/export to a play session.

import { defaultConfig } from "./config.js";
import { HANDLED_CODES } from "./input.js";
import { GameLoop } from "./loop.js";
import { renderState } from "./render.js";
import { PlaySession, SessionMode, loadLevel } from "./session.js";
import { PlayTraceDoc } from "./trace.js";

const byId = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

const scriptBox = byId<HTMLTextAreaElement>("script");
const modeSelect = byId<HTMLSelectElement>("mode");
const traceInput = byId<HTMLInputElement>("trace-file");
const loadButton = byId<HTMLButtonElement>("load");
const exportButton = byId<HTMLButtonElement>("export");
const statusLine = byId<HTMLElement>("status");
const errorPanel = byId<HTMLElement>("errors");
const canvas = byId<HTMLCanvasElement>("screen");

const ctx = canvas.getContext("2d");
if (ctx === null) throw new Error("canvas 2d context unavailable");

const cfg = defaultConfig();
canvas.width = cfg.screenWidth;
canvas.height = cfg.screenHeight;

let session: PlaySession | null = null;
let loop: GameLoop | null = null;
let replayDoc: PlayTraceDoc | null = null;

const OUTCOME_TEXT: Record<string, string> = {
  running: "playing",
  died: "you died",
  victory: "boss down!",
  "replay-complete": "replay complete",
};

const showErrors = (errors: string[]): void => {
  errorPanel.textContent = errors.join("\n");
  errorPanel.hidden = errors.length === 0;
};

const showStatus = (): void => {
  if (session === null) {
    statusLine.textContent = "no level loaded";
    return;
  }
  const s = session.state;
  const outcome = OUTCOME_TEXT[session.outcome];
  statusLine.textContent =
    `frame ${s.frame} | health ${Math.max(s.bossHealth, 0)}/${s.bossHealthMax} | ` +
    `bullets ${s.bullets.length} | ${outcome}`;
  exportButton.disabled = session.mode !== "human" || !session.finished;
};

const startSession = (): void => {
  loop?.stop();
  const mode = modeSelect.value as SessionMode;
  if (mode === "replay" && replayDoc === null) {
    showErrors(["choose a trace file to replay"]);
    return;
  }
  const result = loadLevel(scriptBox.value, mode, {
    cfg,
    replayActions: mode === "replay" ? (replayDoc as PlayTraceDoc).actions : undefined,
  });
  if (!result.ok) {
    showErrors(result.errors);
    return;
  }
  showErrors([]);
  session = result.session;
  session.input.clear();
  loop = new GameLoop(
    () => (session as PlaySession).tick(),
    () => {
      renderState(ctx, (session as PlaySession).state, cfg);
      showStatus();
    },
  );
  loop.start();
  canvas.focus();
};

const exportTrace = (): void => {
  if (session === null) return;
  const doc = session.exportTrace();
  const blob = new Blob([JSON.stringify(doc) + "\n"], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = "trace.json";
  a.click();
  URL.revokeObjectURL(url);
};

const readTraceFile = async (file: File): Promise<void> => {
  try {
    const doc = JSON.parse(await file.text()) as PlayTraceDoc;
    if (!Array.isArray(doc.actions)) throw new Error("no actions array");
    replayDoc = doc;
    showErrors([]);
  } catch (e) {
    replayDoc = null;
    showErrors([`could not read trace: ${e instanceof Error ? e.message : String(e)}`]);
  }
};

window.addEventListener("keydown", (event) => {
  if (!HANDLED_CODES.has(event.code)) return;
  event.preventDefault();
  session?.input.press(event.code);
});
window.addEventListener("keyup", (event) => {
  session?.input.release(event.code);
});
window.addEventListener("blur", () => session?.input.clear());

loadButton.addEventListener("click", startSession);
exportButton.addEventListener("click", exportTrace);
traceInput.addEventListener("change", () => {
  const file = traceInput.files?.[0];
  if (file !== undefined) void readTraceFile(file);
});
modeSelect.addEventListener("change", () => {
  traceInput.parentElement?.toggleAttribute("hidden", modeSelect.value !== "replay");
});

showStatus();
