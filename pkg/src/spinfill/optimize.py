"""Greedy zero-temperature Metropolis descent on the correlation cost.

Acceptance is strict: a proposal is committed only if it lowers the cost.
Descent comparisons use the exact integer key from
``EnergyState.descent_coeffs``, so the cost trajectory over accepted moves
is strictly decreasing with no floating-point drift, and the run terminates
once every free node has been proposed and rejected since the last
acceptance (rejection ratio 1).  ``max_sweeps`` is a safety cap only;
hitting it flags the result as non-converged instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discretize import ClassField, SpinField
from .energy import ISING, EnergyState, full_pair_stats, model_of
from .grid import CheckerboardPartition, neighbor_lists, neighbor_matrix


@dataclass
class OptimizerConfig:
    mode: str = "sequential"  # "sequential" | "checkerboard"
    max_sweeps: int = 1000
    seed: int = 0
    randomize_visits: bool = False  # shuffle the sequential visit order per sweep
    track_costs: bool = False  # record the cost after every accepted move

    def __post_init__(self):
        if self.mode not in ("sequential", "checkerboard"):
            raise ValueError(f"unknown optimizer mode {self.mode!r}")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")


@dataclass
class OptimizerResult:
    field: SpinField | ClassField
    sweeps: int
    cost: float
    accepted: int
    converged: bool
    cost_trace: list[float] | None = None  # [initial, after move 1, ...] when tracked


def propose(field, node: int, n_classes: int | None = None, rng=None) -> int:
    """Candidate label for one free node.

    Binary fields flip deterministically; class fields draw uniformly from
    the other n_classes - 1 labels.
    """
    if field.frozen.ravel()[node]:
        raise ValueError(f"node {node} is frozen")
    cur = int(field.values.ravel()[node])
    if cur == 0:
        raise ValueError(f"node {node} is unassigned")
    if isinstance(field, SpinField):
        return -cur
    if n_classes is None or n_classes < 2:
        raise ValueError("n_classes >= 2 is required for multiclass proposals")
    if rng is None:
        raise ValueError("an rng is required for multiclass proposals")
    nxt = cur + int(rng.integers(1, n_classes))
    return nxt - n_classes if nxt > n_classes else nxt


def _check_inputs(field, energy: EnergyState, n_classes: int | None) -> None:
    model = model_of(field)
    if model != energy.model:
        raise ValueError("energy state model does not match the field type")
    if not field.fully_assigned:
        raise ValueError("field must be fully assigned before optimization")
    if model != ISING:
        if n_classes is None or n_classes < 2:
            raise ValueError("n_classes >= 2 is required for class fields")
        if int(field.values.max()) > n_classes:
            raise ValueError("field holds labels above n_classes")
    fs, fn = full_pair_stats(field)
    if fs != energy.pair_sum or fn != energy.n_pairs:
        raise ValueError("energy state is inconsistent with the field")


def greedy_optimize(
    field,
    energy: EnergyState,
    cfg: OptimizerConfig,
    n_classes: int | None = None,
) -> OptimizerResult:
    """Run greedy descent until rejection ratio 1 or the sweep cap.

    Frozen nodes are never touched.  The result's cost equals the cost
    recomputed from scratch on the final field (exact integer bookkeeping).
    """
    _check_inputs(field, energy, n_classes)
    work = field.copy()
    free = np.flatnonzero(~work.frozen.ravel())
    trace = [energy.cost] if cfg.track_costs else None
    if free.size == 0:
        return OptimizerResult(work, 0, energy.cost, 0, True, trace)
    rng = np.random.default_rng(cfg.seed)
    if cfg.mode == "sequential":
        sweeps, accepted, converged, sigma = _run_sequential(
            work, energy, cfg, n_classes, free, rng, trace
        )
    else:
        sweeps, accepted, converged, sigma = _run_checkerboard(
            work, energy, cfg, n_classes, free, rng, trace
        )
    final = EnergyState(
        energy.model, energy.sample_sum, energy.sample_pairs, sigma, energy.n_pairs
    )
    return OptimizerResult(work, sweeps, final.cost, accepted, converged, trace)


def checkerboard_sweep(
    field,
    energy: EnergyState,
    partition: CheckerboardPartition,
    rng,
    n_classes: int | None = None,
):
    """One two-phase sweep: vectorized proposal deltas per parity class, then
    greedy commits in ascending node order against the running pair sum.

    Same-parity nodes share no pair, so all deltas of a phase stay valid
    while that phase commits.  Returns (field, accepted, energy) with fresh
    field and energy reflecting the committed moves.
    """
    _check_inputs(field, energy, n_classes)
    work = field.copy()
    lx, ly = work.lx, work.ly
    n = lx * ly
    lab_pad = np.concatenate([work.values.ravel().astype(np.int64), np.zeros(1, np.int64)])
    nmat = neighbor_matrix(lx, ly)
    free_mask = ~work.frozen.ravel()
    a_coeff, b_coeff = energy.descent_coeffs()
    sigma = energy.pair_sum
    resid = a_coeff - b_coeff * sigma
    accepted = 0
    ising = energy.model == ISING
    for side in partition:
        nodes = side[free_mask[side]]
        if nodes.size == 0:
            continue
        props, deltas = _phase_proposals(lab_pad, nodes, nmat, ising, n_classes, rng)
        resid, sigma, accepted, _, _ = _commit_ascending(
            lab_pad, nodes, props, deltas, b_coeff, resid, sigma, accepted, 0, None
        )
    work.values[...] = lab_pad[:n].reshape(ly, lx).astype(work.values.dtype)
    out_energy = EnergyState(
        energy.model, energy.sample_sum, energy.sample_pairs, sigma, energy.n_pairs
    )
    return work, accepted, out_energy


def _trace_cost(resid: int, a_coeff: int, n_pairs: int) -> float:
    if a_coeff != 0:
        return (resid / a_coeff) ** 2
    return (resid / n_pairs) ** 2


def _run_sequential(work, energy, cfg, n_classes, free, rng, trace):
    lx, ly = work.lx, work.ly
    nbrs = neighbor_lists(lx, ly)
    lab = [int(x) for x in work.values.ravel()]
    a_coeff, b_coeff = energy.descent_coeffs()
    sigma = energy.pair_sum
    resid = a_coeff - b_coeff * sigma
    abs_resid = abs(resid)
    free_list = free.tolist()
    n_free = len(free_list)
    ising = energy.model == ISING
    rejects = 0
    sweeps = 0
    accepted = 0
    converged = False
    while sweeps < cfg.max_sweeps and not converged:
        sweeps += 1
        order = rng.permutation(free).tolist() if cfg.randomize_visits else free_list
        shifts = None if ising else rng.integers(1, n_classes, size=n_free).tolist()
        for pos, node in enumerate(order):
            cur = lab[node]
            if ising:
                acc = 0
                for j in nbrs[node]:
                    acc += lab[j]
                prop = -cur
                d = -2 * cur * acc
            else:
                prop = cur + shifts[pos]
                if prop > n_classes:
                    prop -= n_classes
                d = 0
                for j in nbrs[node]:
                    nj = lab[j]
                    if nj == prop:
                        d += 1
                    elif nj == cur:
                        d -= 1
            new_resid = resid - b_coeff * d
            new_abs = new_resid if new_resid >= 0 else -new_resid
            if new_abs < abs_resid:
                lab[node] = prop
                resid = new_resid
                abs_resid = new_abs
                sigma += d
                accepted += 1
                rejects = 0
                if trace is not None:
                    trace.append(_trace_cost(resid, a_coeff, energy.n_pairs))
            else:
                rejects += 1
                if rejects >= n_free:
                    converged = True
                    break
    work.values[...] = np.asarray(lab, dtype=work.values.dtype).reshape(ly, lx)
    return sweeps, accepted, converged, sigma


def _run_checkerboard(work, energy, cfg, n_classes, free, rng, trace):
    lx, ly = work.lx, work.ly
    n = lx * ly
    lab_pad = np.concatenate([work.values.ravel().astype(np.int64), np.zeros(1, np.int64)])
    nmat = neighbor_matrix(lx, ly)
    parity = (free % lx + free // lx) % 2
    phases = (free[parity == 0], free[parity == 1])
    a_coeff, b_coeff = energy.descent_coeffs()
    sigma = energy.pair_sum
    resid = a_coeff - b_coeff * sigma
    n_free = free.size
    ising = energy.model == ISING
    rejects = 0
    sweeps = 0
    accepted = 0
    converged = False
    while sweeps < cfg.max_sweeps and not converged:
        sweeps += 1
        for nodes in phases:
            if nodes.size == 0:
                continue
            props, deltas = _phase_proposals(lab_pad, nodes, nmat, ising, n_classes, rng)
            resid, sigma, accepted, rejects, stopped = _commit_ascending(
                lab_pad, nodes, props, deltas, b_coeff, resid, sigma, accepted, rejects,
                n_free, trace, a_coeff, energy.n_pairs
            )
            if stopped:
                converged = True
                break
    work.values[...] = lab_pad[:n].reshape(ly, lx).astype(work.values.dtype)
    return sweeps, accepted, converged, sigma


def _phase_proposals(lab_pad, nodes, nmat, ising, n_classes, rng):
    cur = lab_pad[nodes]
    nbr = lab_pad[nmat[nodes]]
    if ising:
        props = -cur
        deltas = -2 * cur * nbr.sum(axis=1)
    else:
        props = cur + rng.integers(1, n_classes, size=nodes.size)
        props[props > n_classes] -= n_classes
        deltas = (nbr == props[:, None]).sum(axis=1) - (nbr == cur[:, None]).sum(axis=1)
    return props, deltas


def _commit_ascending(
    lab_pad, nodes, props, deltas, b_coeff, resid, sigma, accepted, rejects, stop_at
):
    abs_resid = abs(resid)
    node_list = nodes.tolist()
    prop_list = props.tolist()
    delta_list = deltas.tolist()
    stopped = False
    for i in range(len(node_list)):
        d = delta_list[i]
        new_resid = resid - b_coeff * d
        new_abs = new_resid if new_resid >= 0 else -new_resid
        if new_abs < abs_resid:
            lab_pad[node_list[i]] = prop_list[i]
            resid = new_resid
            abs_resid = new_abs
            sigma += d
            accepted += 1
            rejects = 0
        else:
            rejects += 1
            if stop_at is not None and rejects >= stop_at:
                stopped = True
                break
    return resid, sigma, accepted, rejects, stopped
