"""Monte Carlo decoding harness.

Draws i.i.d. errors, decodes each syndrome exactly with the tensor-network
decoder and scores success when the decoder's class matches the sampled
error's class.  Per-trial random streams are derived from the master seed
and the (code, p, trial) labels, so records are independent of execution
order and identical across reruns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .code import logical_class_of, pure_error, syndrome_of
from .decoder import Decoder, ErrorModel, depolarizing_model
from .network import NetworkSpec
from .pauli import PauliString

_LETTER_FROM_CODE = (0, 1, 3, 2)  # x + 2z -> I,X,Z,Y reindexed


@dataclass
class SimConfig:
    networks: list  # (name, NetworkSpec) pairs
    ps: list
    trials: int
    seed: int
    out: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for p in self.ps:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p={p} outside [0, 1]")


@dataclass
class SimRecord:
    code: str
    p: float
    trials: int
    successes: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        q = self.rate
        return math.sqrt(q * (1.0 - q) / self.trials)


def sample_error(model: ErrorModel, rng) -> PauliString:
    """One letter per qubit, drawn independently from the model rows."""
    u = rng.random(model.n)
    cum = np.cumsum(model.probs, axis=1)
    idx = (u[:, None] > cum).sum(axis=1)
    return PauliString.from_letters(int(g) for g in idx)


def run_trial(decoder: Decoder, model: ErrorModel, rng) -> bool:
    """Sample, decode, and compare logical classes."""
    error = sample_error(model, rng)
    s = syndrome_of(decoder.code, error)
    result = decoder.decode(s, model)
    residual = error * pure_error(decoder.code, s)
    return logical_class_of(decoder.code, residual) == result.chosen


def trial_rng(seed: int, code_idx: int, p_idx: int, trial: int):
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(code_idx, p_idx, trial)))


def monte_carlo(config: SimConfig, progress=None) -> list:
    """Per (code, p): ``trials`` independent decode-and-compare runs."""
    records = []
    for code_idx, (name, spec) in enumerate(config.networks):
        decoder = Decoder(spec)
        n = decoder.code.n
        for p_idx, p in enumerate(config.ps):
            model = depolarizing_model(n, p)
            successes = 0
            for trial in range(config.trials):
                rng = trial_rng(config.seed, code_idx, p_idx, trial)
                successes += run_trial(decoder, model, rng)
            rec = SimRecord(name, p, config.trials, successes)
            records.append(rec)
            if progress:
                progress(rec)
    return records


def records_csv(records) -> str:
    lines = ["code,p,trials,successes,rate,stderr"]
    for r in records:
        lines.append(f"{r.code},{r.p:g},{r.trials},{r.successes},"
                     f"{r.rate:.6f},{r.stderr:.6f}")
    return "\n".join(lines) + "\n"
