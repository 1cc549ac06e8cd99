"""Shared oracles, strategies and the acceptance summary hook."""

import itertools
from collections import deque

import numpy as np
import pytest
from hypothesis import strategies as st

from percolab import build_graph

# ---------------------------------------------------------------------------
# independent oracles (plain Python, no package internals)


def oracle_components(n, edges):
    """Component sizes, descending, by explicit BFS over an adjacency dict."""
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, sizes, label = set(), [], [-1] * n
    for s in range(n):
        if s in seen:
            continue
        seen.add(s)
        q, size = deque([s]), 0
        while q:
            x = q.popleft()
            label[x] = len(sizes)
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        sizes.append(size)
    return sorted(sizes, reverse=True), label


def oracle_boundary(edges, members):
    s = set(members)
    return sum((u in s) != (v in s) for u, v in edges)


def oracle_isoperimetric(n, edges, lo=1, hi=None):
    """min boundary/|S| over all S with lo <= |S| <= hi by binary counter."""
    from fractions import Fraction

    hi = n // 2 if hi is None else hi
    best = None
    for code in range(1, 1 << n):
        members = [v for v in range(n) if code >> v & 1]
        if not lo <= len(members) <= hi:
            continue
        r = Fraction(oracle_boundary(edges, members), len(members))
        if best is None or r < best:
            best = r
    return best


def same_partition(label_a, label_b):
    pairs = set(zip(label_a, label_b))
    return len(pairs) == len(set(label_a)) == len(set(label_b))


# ---------------------------------------------------------------------------
# hypothesis strategies


@st.composite
def small_graphs(draw, max_n=10, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(n, chosen)


@st.composite
def masked_graphs(draw, max_n=10):
    g = draw(small_graphs(max_n=max_n))
    mask = np.array(draw(st.lists(st.booleans(), min_size=g.m, max_size=g.m)), dtype=bool)
    return g, mask


def random_graph(rng, n, p):
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, pairs)


# ---------------------------------------------------------------------------
# acceptance summary

_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record a detail line for the acceptance criterion of the requesting test."""
    marker = request.node.get_closest_marker("acceptance")
    number = marker.args[0]
    entry = _RESULTS.setdefault(number, {"title": marker.args[1], "details": []})
    return entry["details"].append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    entry = _RESULTS.setdefault(marker.args[0], {"title": marker.args[1], "details": []})
    if hasattr(rep, "wasxfail"):
        entry["status"] = "FAIL"
    elif rep.failed:
        entry["status"] = "FAIL"
    elif rep.when == "call":
        entry.setdefault("status", "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        detail = "; ".join(e["details"])
        tr.write_line(f"criterion {number:2d} {e.get('status', 'FAIL')}: {e['title']}"
                      + (f" ({detail})" if detail else ""))

