"""
Orbit computations on index sets.

An action is given as a list of index maps (one numpy array per generator,
each a permutation of ``range(n)``). Orbits are the connected components of
the resulting graph; each orbit is labelled by its smallest index.
"""

import logging
from typing import Callable, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


def orbit_labels(n: int, maps: Sequence[np.ndarray]) -> np.ndarray:
    """Label every point with the minimum of its orbit.

    Minimum labels are pulled along each map and its inverse, then shortcut
    through ``labels[labels]`` until nothing changes.
    """
    labels = np.arange(n, dtype=np.int64)
    if n == 0 or not maps:
        return labels
    both = []
    for m in maps:
        m = np.asarray(m, dtype=np.int64)
        inv = np.empty_like(m)
        inv[m] = np.arange(n, dtype=np.int64)
        both.extend((m, inv))
    rounds = 0
    while True:
        rounds += 1
        old = labels
        for m in both:
            labels = np.minimum(labels, labels[m])
        labels = labels[labels]
        if np.array_equal(labels, old):
            break
    logger.debug(f"orbit labels for {n} points settled after {rounds} rounds")
    return labels


def orbit_partition(labels: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split orbit labels into (representatives, orbit index per point, sizes).

    Representatives come out in increasing order, so orbit ``i`` is the one
    whose minimum is ``representatives[i]``.
    """
    reps, inverse, sizes = np.unique(labels, return_inverse=True, return_counts=True)
    return reps, inverse.astype(np.int64), sizes.astype(np.int64)


def transversal(
    reps: np.ndarray,
    maps: Sequence[np.ndarray],
    gens: Sequence[int],
    compose: Callable[[np.ndarray, int], np.ndarray],
    identity: int,
    n: int,
) -> np.ndarray:
    """For every point x, an element t with ``rep(x) . t = x``.

    Breadth-first from all representatives at once; ``compose(ts, s)`` must
    return the element indices of ``t * s`` for an array ``ts``.
    """
    result = np.full(n, -1, dtype=np.int64)
    frontier = np.asarray(reps, dtype=np.int64)
    result[frontier] = identity
    while frontier.size:
        fresh = []
        for m, s in zip(maps, gens):
            images = m[frontier]
            new_mask = result[images] < 0
            if not new_mask.any():
                continue
            images = images[new_mask]
            sources = frontier[new_mask]
            images, first = np.unique(images, return_index=True)
            result[images] = compose(result[sources[first]], s)
            fresh.append(images)
        frontier = np.concatenate(fresh) if fresh else np.empty(0, dtype=np.int64)
    return result
