/** Typed client for the game service /v1 HTTP API.
 *
 * Every number the UI shows comes through this module; the client never
 * recomputes any game math locally.
 */

export interface Rules {
  m: number;
  T: number;
  stake: number;
}

export type Phase =
  | "awaiting-first-choice"
  | "awaiting-second-choice"
  | "playing"
  | "closed";

export type Player = "alice" | "bob";

export interface LedgerRow {
  round: number;
  alpha: number;
  beta: number;
  m: number;
  outcome: "L" | "R";
  winner: Player;
  balance_A: number;
}

export interface SessionSnapshot {
  id: string;
  phase: Phase;
  rules: Rules;
  first_mover: Player;
  alpha_chooser: Player;
  choices: { alpha: number | null; beta: number | null };
  rounds_played: number;
  ledger_tail: LedgerRow[];
  balances: { alice: number; bob: number };
}

export interface Advisory {
  player: Player;
  fixed?: boolean;
  free?: "alpha" | "beta" | "both";
  axis?: number[];
  sigma?: number | number[];
  sigma_min?: number;
  sigma_max?: number;
}

export interface ChoiceResponse {
  phase: Phase;
  advisory: Advisory;
}

export interface RoundsResponse {
  rounds: LedgerRow[];
  balances: { alice: number; bob: number };
}

export interface HeatmapDoc {
  which: string;
  zones: number[];
  grid: [number, number];
  alpha_range: [number, number];
  beta_range: [number, number];
  params: Record<string, number>;
  alphas: number[];
  betas: number[];
  values: number[][];
}

export interface CreateSessionOptions {
  m?: number;
  T?: number;
  stake?: number;
  first_mover?: Player;
  alpha_chooser?: Player;
  hide_choices?: boolean;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let code = "http-error";
    let message = `${resp.status} ${resp.statusText}`;
    try {
      const body = await resp.json();
      if (body.code) code = body.code;
      if (body.message) message = body.message;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(resp.status, code, message);
  }
  return (await resp.json()) as T;
}

export class GameClient {
  constructor(private readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}/v1${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const doc = await unwrap<{ status: string }>(
        await fetch(this.url("/health")),
      );
      return doc.status === "ok";
    } catch {
      return false;
    }
  }

  async createSession(
    options: CreateSessionOptions = {},
  ): Promise<SessionSnapshot> {
    return unwrap(
      await await_fetch(this.url("/sessions"), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(options),
      }),
    );
  }

  async getSession(id: string): Promise<SessionSnapshot> {
    return unwrap(await await_fetch(this.url(`/sessions/${id}`)));
  }

  async submitChoice(
    id: string,
    player: Player,
    value: number,
  ): Promise<ChoiceResponse> {
    return unwrap(
      await await_fetch(this.url(`/sessions/${id}/choice`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ player, value }),
      }),
    );
  }

  async playRounds(id: string, n: number): Promise<RoundsResponse> {
    return unwrap(
      await await_fetch(this.url(`/sessions/${id}/rounds`), {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ n }),
      }),
    );
  }

  async closeSession(id: string): Promise<SessionSnapshot> {
    return unwrap(
      await await_fetch(this.url(`/sessions/${id}/close`), { method: "POST" }),
    );
  }

  async fetchHeatmap(
    which: string,
    m: number,
    grid: number,
  ): Promise<HeatmapDoc> {
    const params = new URLSearchParams({
      which,
      m: String(m),
      grid: String(grid),
      format: "json",
    });
    return unwrap(await await_fetch(this.url(`/heatmap?${params}`)));
  }

  async fetchHeatmapCsv(which: string, m: number, grid: number): Promise<string> {
    const params = new URLSearchParams({
      which,
      m: String(m),
      grid: String(grid),
      format: "csv",
    });
    const resp = await fetch(this.url(`/heatmap?${params}`));
    if (!resp.ok) {
      throw new ApiError(resp.status, "http-error", resp.statusText);
    }
    return resp.text();
  }
}

// fetch() wrapped so a connection failure surfaces as ApiError(0, ...).
async function await_fetch(
  input: string,
  init?: RequestInit,
): Promise<Response> {
  try {
    return await fetch(input, init);
  } catch (err) {
    throw new ApiError(0, "unreachable", `service unreachable: ${err}`);
  }
}
