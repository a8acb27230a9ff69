from stripmis.solution import Solution, TraceNode, best_solution


def test_best_solution_breaks_ties_lexicographically():
    candidates = [Solution((2, 5), 4), Solution((1, 7), 4), Solution((0,), 3)]
    assert best_solution(candidates).vertices == (1, 7)
    assert best_solution([Solution((), 0)]) == Solution((), 0)


def test_relabel_and_union():
    local = Solution((0, 2), 5, stats={"nodes": 3})
    moved = local.relabel([10, 11, 4])
    assert moved.vertices == (4, 10)
    assert moved.stats == {"nodes": 3}
    assert moved.union(Solution((1,), 2)) == Solution((1, 4, 10), 7)


def test_trace_and_stats_do_not_affect_equality():
    plain = Solution((1,), 1)
    traced = Solution((1,), 1, TraceNode("base", 1), {"nodes": 1})
    assert plain == traced


def test_trace_node():
    leaf = TraceNode("base", 2, {"weight": 1})
    root = TraceNode("separator", 6, {"separator": [3]}, (leaf, leaf))
    assert root.node_count() == 3
    assert root.to_dict()["children"][0] == {"case": "base", "size": 2, "detail": {"weight": 1}, "children": []}
    assert root.render(max_depth=0) == "separator n=6 separator=[3]"
