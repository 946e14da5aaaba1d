/** Client-side play loop: session state, ledger accumulation, bot games.
 *
 * All state transitions go through the service; this module only mirrors
 * responses and never decides an outcome locally.
 */

import {
  GameClient,
  type LedgerRow,
  type Player,
  type SessionSnapshot,
} from "./api.js";
import type { Bot } from "./bot.js";

export interface GameState {
  snapshot: SessionSnapshot | null;
  ledger: LedgerRow[];
  balances: { alice: number; bob: number };
  error: string | null;
}

export function emptyState(): GameState {
  return {
    snapshot: null,
    ledger: [],
    balances: { alice: 0, bob: 0 },
    error: null,
  };
}

export function isZeroSum(state: GameState): boolean {
  return state.balances.alice + state.balances.bob === 0;
}

export class GameController {
  readonly state: GameState = emptyState();

  constructor(private readonly client: GameClient) {}

  async create(options: Parameters<GameClient["createSession"]>[0] = {}) {
    this.state.snapshot = await this.client.createSession(options);
    this.state.ledger = [];
    this.state.balances = { alice: 0, bob: 0 };
    return this.state.snapshot;
  }

  private get id(): string {
    if (!this.state.snapshot) throw new Error("no active session");
    return this.state.snapshot.id;
  }

  async refresh(): Promise<SessionSnapshot> {
    this.state.snapshot = await this.client.getSession(this.id);
    this.state.balances = this.state.snapshot.balances;
    return this.state.snapshot;
  }

  async choose(player: Player, value: number) {
    const resp = await this.client.submitChoice(this.id, player, value);
    await this.refresh();
    return resp;
  }

  async play(n: number): Promise<LedgerRow[]> {
    const resp = await this.client.playRounds(this.id, n);
    this.state.ledger.push(...resp.rounds);
    this.state.balances = resp.balances;
    if (this.state.snapshot) {
      this.state.snapshot.rounds_played += resp.rounds.length;
    }
    return resp.rounds;
  }

  async close(): Promise<SessionSnapshot> {
    this.state.snapshot = await this.client.closeSession(this.id);
    return this.state.snapshot;
  }
}

export interface BotGameResult {
  humanChoice: number;
  botChoice: number;
  ledger: LedgerRow[];
  balances: { alice: number; bob: number };
  outcomes: string[];
}

/** Scripted game: the human (alice, first mover) fixes alpha, the bot picks
 * beta, then `rounds` rounds are played in one batch. */
export async function playBotGame(
  client: GameClient,
  bot: Bot,
  humanAlpha: number,
  rounds: number,
  seed: number,
): Promise<BotGameResult> {
  const controller = new GameController(client);
  await controller.create({
    m: 1,
    first_mover: "alice",
    alpha_chooser: "alice",
    seed,
  });
  await controller.choose("alice", humanAlpha);
  const botChoice = bot.choose("beta", null);
  await controller.choose("bob", botChoice);
  const ledger = await controller.play(rounds);
  return {
    humanChoice: humanAlpha,
    botChoice,
    ledger,
    balances: controller.state.balances,
    outcomes: ledger.map((row) => row.outcome),
  };
}
