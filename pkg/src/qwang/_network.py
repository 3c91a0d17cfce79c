"""Pairwise contraction of small labelled tensor networks.

Each tensor comes with one hashable label per axis. Labels shared between
tensors are summed once no later tensor (and not the output) needs them; a
label may be shared by more than two axes, which sums over the common
diagonal. Tensors are absorbed in the given order, so the caller controls the
width of the contraction frontier.
"""
from __future__ import annotations

from collections import Counter
from typing import Hashable, Sequence

import numpy as np

from .transfer import DEFAULT_BUDGET, Budget, BudgetExceeded

_LETTERS = 52


def contract_network(tensors: Sequence[np.ndarray], labels: Sequence[Sequence[Hashable]],
                     output: Sequence[Hashable], budget: Budget = DEFAULT_BUDGET) -> np.ndarray:
    if len(tensors) != len(labels):
        raise ValueError("one label list per tensor")
    dims: dict[Hashable, int] = {}
    for arr, labs in zip(tensors, labels):
        if arr.ndim != len(labs):
            raise ValueError(f"tensor of rank {arr.ndim} given {len(labs)} labels")
        for size, lab in zip(arr.shape, labs):
            if dims.setdefault(lab, size) != size:
                raise ValueError(f"label {lab!r} used with sizes {dims[lab]} and {size}")
    output = list(output)
    remaining = Counter(lab for labs in labels for lab in set(labs))
    needed_out = set(output)

    cur = np.ones((), dtype=np.complex128)
    cur_labels: list[Hashable] = []
    for arr, labs in zip(tensors, labels):
        for lab in set(labs):
            remaining[lab] -= 1
        keep = []
        for lab in list(dict.fromkeys(cur_labels + list(labs))):
            if lab in needed_out or remaining[lab] > 0:
                keep.append(lab)
        size = int(np.prod([dims[lab] for lab in keep], dtype=np.int64)) if keep else 1
        if size > budget.max_entries:
            raise BudgetExceeded(f"intermediate tensor with {len(keep)} open bonds has {size} entries "
                                 f"(budget {budget.max_entries})", size)
        cur, cur_labels = _pair(cur, cur_labels, arr, list(labs), keep)
    missing = needed_out - set(cur_labels)
    if missing:
        raise ValueError(f"output labels {missing} not present in the network")
    return _einsum_pair(cur, cur_labels, np.ones(()), [], output)


def _pair(a, la, b, lb, keep):
    # plain pairwise contraction: tensordot, leaving the result axes in its natural order
    shared = set(la) & set(lb)
    plain = (len(set(la)) == len(la) and len(set(lb)) == len(lb) and not (shared & set(keep))
             and set(keep) == (set(la) | set(lb)) - shared)
    if not plain:
        return _einsum_pair(a, la, b, lb, keep), keep
    ia = [la.index(x) for x in shared]
    ib = [lb.index(x) for x in shared]
    out = np.tensordot(a, b, axes=(ia, ib))
    return out, [x for x in la if x not in shared] + [x for x in lb if x not in shared]


def _einsum_pair(a, la, b, lb, out):
    local = {lab: i for i, lab in enumerate(dict.fromkeys(list(la) + list(lb) + list(out)))}
    if len(local) > _LETTERS:
        raise BudgetExceeded(f"{len(local)} distinct bonds in one contraction step")
    return np.einsum(a, [local[x] for x in la], b, [local[x] for x in lb], [local[x] for x in out],
                     optimize=len(la) + len(lb) > 2)
