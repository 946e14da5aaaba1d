"""JSON-over-HTTP game service for the coin-flipping playground.

Sessions live in memory; every state-changing call can be journaled to an
append-only JSON-lines file for replay.  All game numbers served to clients
come from the same code paths the library uses (win densities, chain
solution), so the UI never recomputes physics.
"""

from __future__ import annotations

import json
import math
import secrets
import threading
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import heatmaps
from .games import GameRules, Strategy, play_round, win_density_grid
from .rng import substream

PHASES = ("awaiting-first-choice", "awaiting-second-choice", "playing", "closed")

_ADVISORY_POINTS = 101


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


class CreateSessionRequest(BaseModel):
    m: int = Field(default=1, ge=1)
    T: int = Field(default=2000, ge=1)
    stake: int = Field(default=1, ge=1)
    first_mover: str = Field(default="alice", pattern="^(alice|bob)$")
    alpha_chooser: str = Field(default="alice", pattern="^(alice|bob)$")
    hide_choices: bool = True
    seed: int | None = None


class ChoiceRequest(BaseModel):
    player: str = Field(pattern="^(alice|bob)$")
    value: float


class RoundsRequest(BaseModel):
    n: int = Field(ge=1, le=100_000)


@dataclass
class Session:
    id: str
    rules: GameRules
    first_mover: str
    alpha_chooser: str
    hide_choices: bool
    seed: int
    phase: str = "awaiting-first-choice"
    alpha: float | None = None
    beta: float | None = None
    ledger: list[dict] = field(default_factory=list)
    balance_alice: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    rng: np.random.Generator = field(init=False)

    def __post_init__(self) -> None:
        self.rng = substream(self.seed, 0)

    def chooser_of(self, player: str) -> str:
        """Which angle this player controls."""
        return "alpha" if self.alpha_chooser == player else "beta"

    def expected_player(self) -> str:
        if self.phase == "awaiting-first-choice":
            return self.first_mover
        return "bob" if self.first_mover == "alice" else "alice"

    def snapshot(self, tail: int = 20) -> dict:
        choices: dict[str, float | None] = {"alpha": self.alpha, "beta": self.beta}
        if self.hide_choices and self.phase == "awaiting-second-choice":
            # Do not reveal the first mover's angle until both are in.
            hidden = self.chooser_of(self.first_mover)
            choices[hidden] = None
        return {
            "id": self.id,
            "phase": self.phase,
            "rules": {
                "m": self.rules.measurements,
                "T": self.rules.steps_per_epoch,
                "stake": self.rules.stake,
            },
            "first_mover": self.first_mover,
            "alpha_chooser": self.alpha_chooser,
            "choices": choices,
            "rounds_played": len(self.ledger),
            "ledger_tail": self.ledger[-tail:],
            "balances": {"alice": self.balance_alice, "bob": -self.balance_alice},
        }


def _advisory(session: Session, player: str) -> dict:
    """Win-density slice for the choosing player given the angles fixed so far."""
    alphas = np.linspace(0.0, math.pi, _ADVISORY_POINTS)
    betas = np.linspace(0.0, 2.0 * math.pi, _ADVISORY_POINTS)
    m = session.rules.measurements
    if session.alpha is not None and session.beta is not None:
        grid = win_density_grid(
            np.array([session.alpha]), np.array([session.beta]), m, role=player
        )
        return {"player": player, "fixed": True, "sigma": float(grid[0, 0])}
    if session.alpha is not None:
        values = win_density_grid(np.array([session.alpha]), betas, m, role=player)[0]
        free = "beta"
        axis = betas
    elif session.beta is not None:
        values = win_density_grid(alphas, np.array([session.beta]), m, role=player)[:, 0]
        free = "alpha"
        axis = alphas
    else:
        values = win_density_grid(alphas, betas, m, role=player)
        return {
            "player": player,
            "free": "both",
            "sigma_min": float(values.min()),
            "sigma_max": float(values.max()),
        }
    return {
        "player": player,
        "free": free,
        "axis": axis.tolist(),
        "sigma": values.tolist(),
        "sigma_min": float(values.min()),
        "sigma_max": float(values.max()),
    }


class SessionStore:
    def __init__(self, journal_path: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._journal_path = journal_path

    def journal(self, event: str, payload: dict) -> None:
        if self._journal_path is None:
            return
        with open(self._journal_path, "a") as fh:
            fh.write(json.dumps({"event": event, **payload}) + "\n")

    def create(self, req: CreateSessionRequest) -> Session:
        rules = GameRules(measurements=req.m, stake=req.stake, steps_per_epoch=req.T)
        seed = req.seed if req.seed is not None else secrets.randbits(63)
        session = Session(
            id=secrets.token_hex(8),
            rules=rules,
            first_mover=req.first_mover,
            alpha_chooser=req.alpha_chooser,
            hide_choices=req.hide_choices,
            seed=seed,
        )
        with self._lock:
            self._sessions[session.id] = session
        self.journal("create", {"session": session.id, "request": req.model_dump()})
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "not-found", f"no session {session_id!r}")
        return session


def create_app(journal_path: str | None = None) -> FastAPI:
    app = FastAPI(title="chiralwalk game service")
    store = SessionStore(journal_path)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.post("/v1/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            session = store.create(req)
        except ValueError as exc:
            raise ApiError(400, "invalid-rules", str(exc))
        return session.snapshot()

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return store.get(session_id).snapshot()

    @app.post("/v1/sessions/{session_id}/choice")
    def submit_choice(session_id: str, req: ChoiceRequest):
        session = store.get(session_id)
        with session.lock:
            if session.phase not in ("awaiting-first-choice", "awaiting-second-choice"):
                raise ApiError(409, "wrong-phase", f"phase is {session.phase}")
            expected = session.expected_player()
            if req.player != expected:
                raise ApiError(
                    409, "out-of-turn", f"waiting for {expected}'s choice"
                )
            angle = session.chooser_of(req.player)
            limit = math.pi if angle == "alpha" else 2.0 * math.pi
            if not 0.0 <= req.value <= limit:
                raise ApiError(
                    400, "out-of-range",
                    f"{angle} must lie in [0, {limit:.6g}], got {req.value}",
                )
            setattr(session, angle, req.value)
            session.phase = (
                "playing"
                if session.alpha is not None and session.beta is not None
                else "awaiting-second-choice"
            )
            advisory = _advisory(session, req.player)
            store.journal(
                "choice",
                {"session": session.id, "player": req.player, "value": req.value},
            )
            return {"phase": session.phase, "advisory": advisory}

    @app.post("/v1/sessions/{session_id}/rounds")
    def play_rounds(session_id: str, req: RoundsRequest):
        session = store.get(session_id)
        with session.lock:
            if session.phase != "playing":
                raise ApiError(409, "wrong-phase", f"phase is {session.phase}")
            strategy = Strategy(
                alpha=session.alpha, beta=session.beta,
                alpha_chooser=session.alpha_chooser,
            )
            new_rows = []
            for _ in range(req.n):
                outcome = play_round(strategy, session.rules, session.rng)
                session.balance_alice += outcome.payoff_alice
                row = {
                    "round": len(session.ledger) + 1,
                    "alpha": session.alpha,
                    "beta": session.beta,
                    "m": session.rules.measurements,
                    "outcome": outcome.outcome,
                    "winner": outcome.winner,
                    "balance_A": session.balance_alice,
                }
                session.ledger.append(row)
                new_rows.append(row)
            store.journal("rounds", {"session": session.id, "n": req.n})
            return {
                "rounds": new_rows,
                "balances": {
                    "alice": session.balance_alice,
                    "bob": -session.balance_alice,
                },
            }

    @app.post("/v1/sessions/{session_id}/close")
    def close_session(session_id: str):
        session = store.get(session_id)
        with session.lock:
            session.phase = "closed"
            store.journal("close", {"session": session.id})
            return session.snapshot()

    @app.get("/v1/heatmap")
    def heatmap(
        which: str = Query("pi-left"),
        m: int = Query(1, ge=1),
        grid: int = Query(101, ge=2, le=501),
        format: str = Query("json", pattern="^(json|csv)$"),
    ):
        try:
            hm = heatmaps.strategy_heatmap(which, n=grid, m=m)
        except ValueError as exc:
            raise ApiError(400, "bad-heatmap", str(exc))
        if format == "csv":
            return PlainTextResponse(hm.csv_text(), media_type="text/csv")
        return json.loads(hm.to_json())

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    return app


app = create_app()
