/** Single-page playground: strategy board, turn-ordered choices, play loop. */

import { ApiError, GameClient, type Player } from "./api.js";
import { StrategyBoard } from "./board.js";
import { UniformRandomBot } from "./bot.js";
import { GameController } from "./game.js";
import { zoneColor } from "./zones.js";

const SERVICE_URL =
  (window as unknown as { CHIRALWALK_SERVICE?: string }).CHIRALWALK_SERVICE ??
  "http://localhost:8000";

const client = new GameClient(SERVICE_URL);
const controller = new GameController(client);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setStatus(text: string, isError = false) {
  const status = el<HTMLDivElement>("status");
  status.textContent = text;
  status.className = isError ? "status error" : "status";
}

async function drawBoard(m: number) {
  const doc = await client.fetchHeatmap("pi-left", m, 101);
  const board = new StrategyBoard(doc);
  const canvas = el<HTMLCanvasElement>("board");
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const cw = canvas.width / doc.betas.length;
  const ch = canvas.height / doc.alphas.length;
  for (const cell of board.cells) {
    ctx.fillStyle = zoneColor(cell.zone, board.zones);
    ctx.fillRect(cell.j * cw, cell.i * ch, cw + 1, ch + 1);
  }
  canvas.onmousemove = (ev) => {
    const rect = canvas.getBoundingClientRect();
    const beta = ((ev.clientX - rect.left) / rect.width) * 2 * Math.PI;
    const alpha = ((ev.clientY - rect.top) / rect.height) * Math.PI;
    const reading = board.hover(alpha, beta);
    el("hover").textContent =
      `α=${reading.alpha.toFixed(3)} β=${reading.beta.toFixed(3)} ` +
      `σ_A=${reading.sigma.toFixed(4)} (zone ${reading.zone + 1})`;
  };
}

function renderState() {
  const snap = controller.state.snapshot;
  if (!snap) return;
  el("phase").textContent = snap.phase;
  el("balances").textContent =
    `Alice ${snap.balances.alice >= 0 ? "+" : ""}${snap.balances.alice} / ` +
    `Bob ${snap.balances.bob >= 0 ? "+" : ""}${snap.balances.bob}`;
  const rows = controller.state.ledger
    .slice(-20)
    .map(
      (r) =>
        `<tr><td>${r.round}</td><td>${r.outcome}</td>` +
        `<td>${r.winner}</td><td>${r.balance_A}</td></tr>`,
    )
    .join("");
  el("ledger").innerHTML = rows;
}

async function guard(action: () => Promise<void>) {
  try {
    await action();
    setStatus("ok");
  } catch (err) {
    if (err instanceof ApiError) {
      setStatus(`${err.code}: ${err.message}`, true);
    } else {
      setStatus(String(err), true);
    }
  }
  renderState();
}

function wire() {
  el("new-session").onclick = () =>
    guard(async () => {
      const m = Number(el<HTMLInputElement>("m").value) || 1;
      await controller.create({ m });
      await drawBoard(m);
    });

  el("submit-choice").onclick = () =>
    guard(async () => {
      const player = el<HTMLSelectElement>("player").value as Player;
      const value = Number(el<HTMLInputElement>("angle").value);
      await controller.choose(player, value);
    });

  el("bot-choice").onclick = () =>
    guard(async () => {
      const snap = controller.state.snapshot;
      if (!snap) throw new Error("create a session first");
      const bot = new UniformRandomBot(Date.now() & 0xffffffff);
      const player = snap.phase === "awaiting-first-choice"
        ? snap.first_mover
        : snap.first_mover === "alice"
          ? "bob"
          : "alice";
      const angle = snap.alpha_chooser === player ? "alpha" : "beta";
      await controller.choose(player, bot.choose(angle, null));
    });

  for (const n of [1, 10, 100]) {
    el(`play-${n}`).onclick = () =>
      guard(async () => {
        await controller.play(n);
      });
  }

  el("close-session").onclick = () =>
    guard(async () => {
      await controller.close();
    });
}

async function boot() {
  wire();
  const up = await client.health();
  setStatus(up ? "service up" : "service unreachable", !up);
  if (up) await drawBoard(1);
}

boot();
