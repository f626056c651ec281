import random

import pytest

from conftest import DESK_K, DESK_N

from thuesub.construct import (FRAME, ConstructionError, ConstructionParams, color_subdivision_lemma10,
                               edge_word, format_coloring, gamma_split, max_division, min_division, paper_parameters,
                               parse_coloring, theorem12_pipeline)
from thuesub.goodsets import GoodSet
from thuesub.graphs import EdgeColoring, SubdivisionPlan, complete_graph, path_graph, search_edge_coloring
from thuesub.verify import verify_subdivided
from thuesub.words import P, Q, QBAR, mirror

N = DESK_N


@pytest.fixture(scope="module")
def params(desk_goodset, lwords):
    f = dict(enumerate(desk_goodset.words[:3]))
    return ConstructionParams(N, desk_goodset, f, lwords)


def test_frame_constant():
    assert FRAME == 116
    assert min_division(8750) == 35216 and max_division(8750) == 78750


@pytest.mark.parametrize("k, n, gamma, parts", [
    (35216, 8750, 1, (35216,)),
    (80000, 8750, 2, (40000, 39999)),
    (392, 44, 1, (392,)),
    (396, 44, 1, (396,)),
    (787, 44, 2, (393, 393)),
    (1180, 44, 3, (393, 393, 392)),
])
def test_gamma_split_examples(k, n, gamma, parts):
    s = gamma_split(k, n)
    assert (s.gamma, s.parts) == (gamma, parts)


@pytest.mark.parametrize("k, n", [(35000, 8750), (391, 44), (397, 44), (784, 44)])
def test_gamma_split_errors(k, n):
    with pytest.raises(ConstructionError):
        gamma_split(k, n)


def test_gamma_split_properties():
    rnd = random.Random(0)
    for _ in range(500):
        n = rnd.choice([44, 60, 431, 8750])
        k = rnd.randint(min_division(n), 12 * max_division(n))
        try:
            s = gamma_split(k, n)
        except ConstructionError:
            # only possible below n = 431, where consecutive gammas leave gaps
            assert n < 431
            continue
        assert sum(s.parts) + s.gamma - 1 == k
        assert all(min_division(n) <= x <= max_division(n) for x in s.parts)
        assert max(s.parts) - min(s.parts) <= 1 and list(s.parts) == sorted(s.parts, reverse=True)
        # smallest gamma: gamma - 1 parts cannot hold the remaining vertices
        if s.gamma > 1:
            assert k - (s.gamma - 2) > (s.gamma - 1) * max_division(n)


def test_edge_word_shape(params, lwords):
    k = DESK_K
    w = edge_word(0, k, params)
    fw = params.f[0]
    assert len(w) == k == 19 + N + 39 + (2 * N + 100) + 39 + N + 19
    assert w == Q + fw + P + lwords[2 * N + 100] + P + fw + QBAR
    assert w[:19] == Q and w[-19:] == QBAR
    assert edge_word(0, k, params, reversed=True) == mirror(w)


def test_edge_word_errors(params):
    with pytest.raises(ConstructionError):
        edge_word(0, DESK_K - 1, params)
    with pytest.raises(ConstructionError):
        edge_word(7, DESK_K, params)
    # 2n+105 is not in the good set's index set but is in range; separator still available
    assert len(edge_word(1, DESK_K + 5, params)) == DESK_K + 5


def test_params_validation(desk_goodset, lwords):
    w = desk_goodset.words[0]
    with pytest.raises(ConstructionError):
        ConstructionParams(N, desk_goodset, {0: w, 1: w}, lwords)
    with pytest.raises(ConstructionError):
        ConstructionParams(N, desk_goodset, {0: (0,) * N}, lwords)


def test_single_edge(params):
    g = path_graph(2)
    plan = SubdivisionPlan.from_counts(g, {(0, 1): DESK_K + 2}, {(0, 1): (1, 0)})
    c = EdgeColoring({(0, 1): 1}, 3)
    sg, col = color_subdivision_lemma10(g, c, plan, params)
    assert col.along(sg.chain((0, 1), 1)) == (0,) + edge_word(1, DESK_K + 2, params) + (0,)
    assert col.along(sg.chain((0, 1), 0)) == (0,) + mirror(edge_word(1, DESK_K + 2, params)) + (0,)
    assert verify_subdivided(sg, col).clean


def test_edge_words_errors_name_the_edge(params):
    g = complete_graph(3)
    c = search_edge_coloring(g, 3, strong=True)
    counts = {e: DESK_K for e in g.edges}
    counts[(1, 2)] = 9 * N + 1
    with pytest.raises(ConstructionError, match="edge 1-2"):
        color_subdivision_lemma10(g, c, SubdivisionPlan.from_counts(g, counts), params)
    # k in range but its separator length was not certified for the good set
    narrow = GoodSet(N, params.good_set.words, {2 * N + 100})
    p1 = ConstructionParams(N, narrow, params.f, params.lwords)
    counts[(1, 2)] = DESK_K + 1
    with pytest.raises(ConstructionError, match="not certified"):
        color_subdivision_lemma10(g, c, SubdivisionPlan.from_counts(g, counts), p1)


def test_edge_words_reject_repetitive_coloring(params):
    g = path_graph(3)
    c = EdgeColoring({(0, 1): 0, (1, 2): 0}, 3)
    with pytest.raises(ConstructionError, match="repetitive"):
        color_subdivision_lemma10(g, c, SubdivisionPlan.uniform(g, DESK_K), params)


def test_paper_parameters():
    pp = paper_parameters(3)
    assert pp["n"] == 8750 and pp["c"] == 35216
    big = paper_parameters(10 ** 20)
    assert big["n"] > 8750 and big["c"] == 4 * big["n"] + 216


def test_pipeline_k3(k3_run):
    sg, col = k3_run.subdivided, k3_run.coloring
    assert set(col.colors) <= {0, 1, 2}
    assert all(col.colors[v] == 0 for v in range(3))
    for e in sg.base.edges:
        inner = col.along(sg.chain(e, sg.plan.orientation[e][0])[1:-1])
        assert len(inner) == DESK_K
        assert inner[:19] == Q and inner[-19:] == QBAR
    assert verify_subdivided(sg, col).clean
    rep = k3_run.report
    assert rep["n"] == N and rep["c"] == DESK_K and rep["pi_prime"] == 3
    assert rep["palette_lifted"] <= 2 * rep["pi_prime"] + 3
    assert rep["good_set_size"] >= rep["palette_lifted"]


def test_pipeline_with_gamma_split(lwords):
    g = complete_graph(3)
    plan = SubdivisionPlan.from_counts(g, {(0, 1): 392, (0, 2): 787, (1, 2): 1180}, {(1, 2): (2, 1)})
    res = theorem12_pipeline(g, plan, n=N, lwords=lwords)
    assert res.report["gamma"] == {"0-1": 1, "0-2": 2, "1-2": 3}
    assert verify_subdivided(res.subdivided, res.coloring).clean


def test_pipeline_preconditions(lwords):
    g = complete_graph(3)
    with pytest.raises(ConstructionError, match="fewer than c"):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K - 1), n=N, lwords=lwords)
    with pytest.raises(ConstructionError):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), mode="desk", lwords=lwords)
    with pytest.raises(ConstructionError):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), mode="other", n=N, lwords=lwords)
    with pytest.raises(ConstructionError, match="fewer than c=35216"):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), mode="paper", lwords=lwords)
    with pytest.raises(ConstructionError, match="cannot be split"):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, 500), n=N, lwords=lwords)


def test_pipeline_rechecks_supplied_coloring(lwords):
    # K4's perfect-matching coloring is nonrepetitive on paths but reads 1212 around a 4-cycle
    g = complete_graph(4)
    c = search_edge_coloring(g, 3)
    with pytest.raises(ConstructionError, match="repetitive"):
        theorem12_pipeline(g, SubdivisionPlan.uniform(g, DESK_K), n=N, edge_coloring=c, lwords=lwords)


def test_path_only_coloring_breaks_on_k4(params):
    # why the pipeline insists on strong colorings: the subdivided path that runs
    # almost once around a 4-cycle colored 1,2,1,2 reads a square
    g = complete_graph(4)
    c = search_edge_coloring(g, 3)
    sg, col = color_subdivision_lemma10(g, c, SubdivisionPlan.uniform(g, DESK_K), params, check_coloring=False)
    rep = verify_subdivided(sg, col)
    assert not rep.clean
    x = col.along(rep.square_vertices())
    assert x[:rep.witness.period] == x[rep.witness.period:]


def test_coloring_document_roundtrip(k3_run):
    text = format_coloring(k3_run.subdivided, k3_run.coloring, k3_run.report)
    assert text.startswith("[report]\n")
    assert "\n0 0 original 0\n" in text and "\n3 1 division 0-1 1\n" in text
    col, rep = parse_coloring(text)
    assert col.colors == k3_run.coloring.colors
    assert rep == k3_run.report


@pytest.mark.parametrize("text", ["0 1\n", "[vertices]\n1 0\n", "[vertices]\nx\n"])
def test_coloring_document_errors(text):
    with pytest.raises(ValueError):
        parse_coloring(text)
