"""MCMC - affine-invariant transition kernel, Metropolis-Hastings chain and summaries."""

from scatterbayes.mcmc.kernel import propose_alpha, propose_b, propose_point_move, propose_translate
from scatterbayes.mcmc.record import ChainRecord, read_chain_csv, write_chain_csv, write_snapshots_csv
from scatterbayes.mcmc.sampler import StepResult, accept_probability, draw_initial_state, mh_step, run_chain
from scatterbayes.mcmc.state import AcceptanceMode, ChainState, KernelConfig, MoveKind, Target
from scatterbayes.mcmc.summary import ChainSummary, Histogram, summarize

__all__ = [
    "AcceptanceMode",
    "ChainRecord",
    "ChainState",
    "ChainSummary",
    "Histogram",
    "KernelConfig",
    "MoveKind",
    "StepResult",
    "Target",
    "accept_probability",
    "draw_initial_state",
    "mh_step",
    "propose_alpha",
    "propose_b",
    "propose_point_move",
    "propose_translate",
    "read_chain_csv",
    "run_chain",
    "summarize",
    "write_chain_csv",
    "write_snapshots_csv",
]
