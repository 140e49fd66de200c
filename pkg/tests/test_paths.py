from __future__ import annotations

import pytest

from logsmith.analyzer import (
    KIND_BUILTIN,
    KIND_LOG,
    KIND_UNKNOWN,
    KIND_USER,
    PathBudget,
    RecursionCycle,
    build_call_graph,
    enumerate_paths,
    find_log_calls,
    parse_source,
)


def _single_site(*sources: str):
    units = [parse_source(text, f"U{i}.java") for i, text in enumerate(sources)]
    graph = build_call_graph(units)
    sites = [site for unit in units for site in find_log_calls(unit)]
    assert len(sites) == 1
    return sites[0], graph


def _rendered(enumeration) -> list[str]:
    return [path.yielded.render() for path in enumeration.paths]


def test_example_project_paths(example_sites, example_graph):
    error_site, fatal_site = example_sites
    error_paths = enumerate_paths(error_site, example_graph)
    fatal_paths = enumerate_paths(fatal_site, example_graph)
    assert _rendered(error_paths) == ["User_<.*>_NotFound", "Invalid_User_ID<.*>"]
    assert _rendered(fatal_paths) == ["Guest_<.*>", "Unknown_<.*>"]
    for enumeration in (error_paths, fatal_paths):
        assert not enumeration.truncated
        assert enumeration.cycles == ()
        assert enumeration.involves_conditional
        assert enumeration.involves_external_call
        assert not enumeration.placeholder_mismatch


def test_example_step_chain(example_sites, example_graph):
    enumeration = enumerate_paths(example_sites[0], example_graph)
    first = enumeration.paths[0]
    kinds = [step.callee_kind for step in first.steps]
    assert kinds == [KIND_LOG, KIND_USER, KIND_BUILTIN]
    log_step, user_step, builtin_step = first.steps
    assert log_step.class_fqn == "com.example.Foo"
    assert log_step.call_code == 'log.error(Bar.getUserName("0"))'
    assert user_step.class_fqn == "com.example.Bar"
    assert user_step.call_code == 'Bar.getUserName("0")'
    assert user_step.callee_source.startswith(
        "public static String getUserName(String uid) {")
    assert builtin_step.call_code == "uid.toUpperCase()"
    assert builtin_step.class_fqn == "java.lang.String"
    # the second path stays inside getUserName: no builtin step
    assert [s.callee_kind for s in enumeration.paths[1].steps] == [KIND_LOG, KIND_USER]


def test_literal_format_single_path():
    site, graph = _single_site(
        'package p;\nclass X {\n  void f() { log.error("fixed"); }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["fixed"]
    assert len(enumeration.paths) == 1
    assert [s.callee_kind for s in enumeration.paths[0].steps] == [KIND_LOG]
    assert not enumeration.involves_conditional
    assert not enumeration.involves_external_call


def test_literal_placeholders_become_wildcards():
    site, graph = _single_site(
        "package p;\nclass X {\n  void f(String a, String b) {\n"
        '    log.info("read {} of {}", a, b);\n  }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["read <.*> of <.*>"]
    assert not enumeration.placeholder_mismatch


def test_placeholder_count_mismatch_flagged():
    site, graph = _single_site(
        "package p;\nclass X {\n  void f(String a) {\n"
        '    log.warn("got {} and {}", a);\n  }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert enumeration.placeholder_mismatch
    # the template still treats every placeholder as a wildcard
    assert _rendered(enumeration) == ["got <.*> and <.*>"]


def test_identifier_argument_is_wildcard():
    site, graph = _single_site(
        "package p;\nclass X {\n  void f(String a) { log.debug(a); }\n}\n")
    assert _rendered(enumerate_paths(site, graph)) == ["<.*>"]


def test_builtin_vs_unknown_kinds():
    site, graph = _single_site(
        "package p;\nclass X {\n  void f(String a) {\n"
        '    log.error("x_" + a.trim() + mystery(a));\n  }\n}\n')
    enumeration = enumerate_paths(site, graph)
    # both calls are opaque; their adjacent wildcards collapse into one slot
    assert _rendered(enumeration) == ["x_<.*>"]
    kinds = [s.callee_kind for s in enumeration.paths[0].steps]
    assert kinds == [KIND_LOG, KIND_BUILTIN, KIND_UNKNOWN]
    assert enumeration.involves_external_call


def test_self_recursion_collapses_with_flag():
    site, graph = _single_site(
        "package p;\nclass X {\n"
        '  void f(String a) { log.error("x" + g(a)); }\n'
        '  String g(String a) { return g(a); }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["x<.*>"]
    assert enumeration.cycles == (RecursionCycle(("p.X.g", "p.X.g")),)
    assert not enumeration.truncated


def test_mutual_recursion_records_chain():
    site, graph = _single_site(
        "package p;\nclass X {\n"
        "  void f(String a) { log.error(g(a)); }\n"
        "  String g(String a) { return h(a); }\n"
        "  String h(String a) { return g(a); }\n}\n")
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["<.*>"]
    assert enumeration.cycles == (RecursionCycle(("p.X.g", "p.X.h", "p.X.g")),)


def test_depth_budget_truncates():
    chain = "\n".join(
        f'  String g{i}(String a) {{ return "c{i}_" + g{i + 1}(a); }}'
        for i in range(4))
    source = ("package p;\nclass X {\n"
              "  void f(String a) { log.error(g0(a)); }\n"
              f"{chain}\n"
              '  String g4(String a) { return "end"; }\n}\n')
    site, graph = _single_site(source)
    deep = enumerate_paths(site, graph, PathBudget(max_call_depth=8))
    assert _rendered(deep) == ["c0_c1_c2_c3_end"]
    assert not deep.truncated

    shallow = enumerate_paths(site, graph, PathBudget(max_call_depth=2))
    assert shallow.truncated
    # tracing stops inside g1: its call to g2 collapses to a wildcard
    assert _rendered(shallow) == ["c0_c1_<.*>"]
    last = shallow.paths[0].steps[-1]
    assert last.callee_kind == KIND_USER and "g2" in last.call_code


def test_path_count_is_branch_product():
    # two helpers with three branches each: 3 * 3 = 9 paths
    helper = ('  static String {name}(String a) {{\n'
              '    if (a.isEmpty()) {{\n      return "{name}A_" + a;\n'
              '    }} else if (a.isBlank()) {{\n      return "{name}B";\n'
              '    }} else {{\n      return "{name}C_" + a.trim();\n    }}\n  }}')
    source = ("package p;\nclass X {\n"
              "  void f(String a) { log.error(p(a) + q(a)); }\n"
              f"{helper.format(name='p')}\n{helper.format(name='q')}\n}}\n")
    site, graph = _single_site(source)
    enumeration = enumerate_paths(site, graph)
    assert len(enumeration.paths) == 9
    assert enumeration.involves_conditional
    assert sorted(set(_rendered(enumeration))) == sorted(_rendered(enumeration))

    capped = enumerate_paths(site, graph, PathBudget(max_paths_per_site=4))
    assert len(capped.paths) == 4
    assert capped.truncated


def test_bare_return_contributes_nothing():
    site, graph = _single_site(
        "package p;\nclass X {\n"
        '  void f(String a) { log.error("pre" + g(a)); }\n'
        '  String g(String a) {\n    if (a.isEmpty()) {\n      return;\n'
        '    } else {\n      return "_tail";\n    }\n  }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["pre", "pre_tail"]


def test_configurable_builtin_methods():
    source = ("package p;\nclass X {\n"
              '  void f(String a) { log.error("v_" + a.sanitize()); }\n}\n')
    site, graph = _single_site(source)
    default = enumerate_paths(site, graph)
    assert default.paths[0].steps[1].callee_kind == KIND_UNKNOWN
    custom = enumerate_paths(site, graph, builtin_methods=("sanitize",))
    assert custom.paths[0].steps[1].callee_kind == KIND_BUILTIN


def test_call_arguments_are_never_traced():
    # g ignores its argument entirely; the noisy argument must not add paths
    site, graph = _single_site(
        "package p;\nclass X {\n"
        "  void f(String a) { log.error(g(h(a) + a.trim())); }\n"
        '  String g(String x) { return "stable"; }\n'
        "  String h(String a) {\n    if (a.isEmpty()) {\n"
        '      return "A";\n    } else {\n      return "B";\n    }\n  }\n}\n')
    enumeration = enumerate_paths(site, graph)
    assert _rendered(enumeration) == ["stable"]


def test_budget_validation():
    with pytest.raises(ValueError):
        PathBudget(max_call_depth=0)
    with pytest.raises(ValueError):
        PathBudget(max_paths_per_site=0)
