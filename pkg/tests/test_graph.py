import pytest

from signedteams import (ConflictingSignError, DisconnectedGraphError,
                         GraphFormatError, SkillAssignment, Task,
                         UnknownNodeError, load_graph, load_skills, save_graph)
from signedteams.harness import random_connected_signed_graph


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_smallest_valid_graph(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "0 1 +1\n"))
    assert g.n == 2 and g.m == 1
    assert g.edge_sign(0, 1) == 1


def test_sign_token_variants(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "a b 1\nb c -1\n"))
    assert g.edge_sign(g.index("a"), g.index("b")) == 1
    assert g.edge_sign(g.index("b"), g.index("c")) == -1


def test_comments_and_blank_lines(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "# header\n\n0 1 +1  # inline\n"))
    assert g.m == 1


def test_conflicting_sign_is_fatal(tmp_path):
    path = write(tmp_path, "g.txt", "0 1 +1\n1 0 -1\n")
    with pytest.raises(ConflictingSignError):
        load_graph(path)


def test_duplicate_identical_edge_warns(tmp_path):
    path = write(tmp_path, "g.txt", "0 1 +1\n1 0 +1\n")
    with pytest.warns(UserWarning, match="duplicate"):
        g = load_graph(path)
    assert g.m == 1


def test_parse_error_reports_line(tmp_path):
    with pytest.raises(GraphFormatError, match="line 2"):
        load_graph(write(tmp_path, "g.txt", "0 1 +1\n0 1\n"))
    with pytest.raises(GraphFormatError, match="sign"):
        load_graph(write(tmp_path, "g2.txt", "0 1 +2\n"))


def test_self_loop_rejected(tmp_path):
    with pytest.raises(GraphFormatError, match="self-loop"):
        load_graph(write(tmp_path, "g.txt", "3 3 +1\n"))


def test_disconnected_rejected_unless_override(tmp_path):
    path = write(tmp_path, "g.txt", "0 1 +1\n2 3 -1\n4 2 +1\n")
    with pytest.raises(DisconnectedGraphError):
        load_graph(path)
    g = load_graph(path, largest_component=True)
    assert g.n == 3
    assert set(g.labels) == {"2", "3", "4"}


def test_round_trip(tmp_path):
    g = random_connected_signed_graph(25, 0.2, 0.4, seed=3)
    path = str(tmp_path / "out.txt")
    save_graph(g, path)
    g2 = load_graph(path)
    mapped = {(*sorted((g2.labels[u], g2.labels[v])), s) for u, v, s in g2.edges}
    orig = {(*sorted((g.labels[u], g.labels[v])), s) for u, v, s in g.edges}
    assert mapped == orig


@pytest.mark.parametrize("seed", range(5))
def test_degree_sum_is_twice_edges(seed):
    g = random_connected_signed_graph(15, 0.3, 0.3, seed)
    assert sum(g.degree(u) for u in range(g.n)) == 2 * g.m


def test_reindexing_preserves_signs(tmp_path):
    # Labels deliberately out of dense order.
    text = "node9 node2 -1\nnode2 node5 +1\nnode5 node9 +1\n"
    g = load_graph(write(tmp_path, "g.txt", text))
    assert g.edge_sign(g.index("node9"), g.index("node2")) == -1
    assert g.edge_sign(g.index("node2"), g.index("node5")) == 1
    assert g.edge_sign(g.index("node5"), g.index("node9")) == 1


def test_load_skills_readback(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "0 1 +1\n"))
    sk = load_skills(write(tmp_path, "s.txt", "0 a b\n1 b\n"), g)
    assert sk.holders("b") == {g.index("0"), g.index("1")}
    assert sk.skills_of[g.index("0")] == {"a", "b"}
    assert sk.universe_size == 2


def test_load_skills_unknown_node(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "0 1 +1\n"))
    with pytest.raises(UnknownNodeError):
        load_skills(write(tmp_path, "s.txt", "999 a\n"), g)


def test_load_skills_empty_universe(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "0 1 +1\n"))
    with pytest.raises(GraphFormatError):
        load_skills(write(tmp_path, "s.txt", "# nothing\n"), g)


def test_nodes_absent_from_skills_file_have_empty_sets(tmp_path):
    g = load_graph(write(tmp_path, "g.txt", "0 1 +1\n1 2 +1\n"))
    sk = load_skills(write(tmp_path, "s.txt", "0 a\n"), g)
    assert sk.skills_of[g.index("2")] == frozenset()


def test_task_validates_against_universe():
    sk = SkillAssignment(2, {0: {"a"}, 1: {"b"}})
    Task({"a", "b"}, sk)
    with pytest.raises(ValueError):
        Task({"zz"}, sk)
    with pytest.raises(ValueError):
        Task([])
