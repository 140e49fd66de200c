"""Command-line interface: extract, parse, eval, report.

Exit codes: 0 on success (warnings allowed), 1 when inputs were present
but none were usable (e.g. no project file parsed), 2 on fatal errors
such as unreadable inputs or invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from .analyzer import (
    PathBudget,
    SourceSyntaxError,
    build_call_graph,
    build_report,
    enumerate_paths,
    find_log_calls,
    parse_source,
    render_report,
)
from .config import Config, ConfigError, load_config
from .evaluation import (
    GroundTruthError,
    load_ground_truth,
    score,
    templates_equal,
    time_online,
)
from .matcher import DuplicateTemplate, compile_repository, run_stream
from .templates import (
    Template,
    TemplateBody,
    append_repository,
    load_repository,
    save_repository,
)
from .whitebox import GatewayConfig, PostProcessPolicy
from .whitebox.extract import ProjectFile, extract_project

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_FATAL = 2


def _config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("configuration overrides")
    group.add_argument("--config", metavar="FILE", help="YAML config file")
    group.add_argument("--endpoint", help="gateway endpoint URL (mock: for the mock)")
    group.add_argument("--model", help="gateway model identifier")
    group.add_argument("--temperature", type=float)
    group.add_argument("--timeout", type=float, help="gateway timeout in seconds")
    group.add_argument("--max-retries", type=int)
    group.add_argument("--min-const-chars", type=int)
    group.add_argument("--min-const-token-ratio", type=float)
    group.add_argument("--enable-verifier", action=argparse.BooleanOptionalAction,
                       default=None)
    group.add_argument("--tree-depth", type=int)
    group.add_argument("--sim-threshold", type=float)
    group.add_argument("--max-children", type=int)
    group.add_argument("--max-call-depth", type=int)
    group.add_argument("--max-paths-per-site", type=int)
    group.add_argument("--header-pattern", help="regex prefix stripped from log lines")
    group.add_argument("--allow-empty-inner", action=argparse.BooleanOptionalAction,
                       default=None, help="let inner wildcards match empty text")
    group.add_argument("--builtin-methods",
                       help="comma-separated built-in method names")
    group.add_argument("--workers", type=int)


def _overrides(config: Config, args: argparse.Namespace) -> Config:
    def picked(**pairs):
        return {key: value for key, value in pairs.items() if value is not None}

    gateway = replace(config.gateway, **picked(
        endpoint=args.endpoint, model=args.model, temperature=args.temperature,
        timeout=args.timeout, max_retries=args.max_retries))
    postprocess = replace(config.postprocess, **picked(
        min_const_chars=args.min_const_chars,
        min_const_token_ratio=args.min_const_token_ratio,
        enable_verifier=args.enable_verifier))
    budget = replace(config.budget, **picked(
        max_call_depth=args.max_call_depth,
        max_paths_per_site=args.max_paths_per_site))
    builtins = config.builtin_methods
    if args.builtin_methods is not None:
        builtins = tuple(name.strip() for name in args.builtin_methods.split(",")
                         if name.strip())
    return replace(config, gateway=gateway, postprocess=postprocess, budget=budget,
                   builtin_methods=builtins, **picked(
                       tree_depth=args.tree_depth,
                       tree_sim_threshold=args.sim_threshold,
                       tree_max_children=args.max_children,
                       header_pattern=args.header_pattern,
                       allow_empty_inner=args.allow_empty_inner,
                       workers=args.workers))


def _load_config(args: argparse.Namespace) -> Config:
    config = load_config(args.config) if args.config else Config()
    try:
        return _overrides(config, args)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _discover(project_dir: str) -> list[Path]:
    root = Path(project_dir)
    if not root.is_dir():
        raise OSError(f"not a directory: {project_dir}")
    return sorted(root.rglob("*.java"))


def _parse_files(paths: list[Path]) -> tuple[list[ProjectFile], list[str]]:
    files: list[ProjectFile] = []
    failures: list[str] = []
    for path in paths:
        try:
            text = path.read_text(encoding="utf-8")
            files.append(ProjectFile(unit=parse_source(text, str(path)), text=text))
        except (OSError, SourceSyntaxError) as exc:
            failures.append(f"{path}: {exc}")
    return files, failures


def cmd_extract(args: argparse.Namespace) -> int:
    config = _load_config(args)
    started = time.perf_counter()
    paths = _discover(args.project_dir)
    if not paths:
        print(f"warning: no source files found under {args.project_dir}",
              file=sys.stderr)
        save_repository([], args.out)
        print(f"0 files, 0 log calls, 0 paths, 0 templates -> {args.out}")
        return EXIT_OK
    files, failures = _parse_files(paths)
    for failure in failures:
        print(f"warning: skipped {failure}", file=sys.stderr)
    if not files:
        print("error: no source file parsed", file=sys.stderr)
        return EXIT_PARTIAL

    result = extract_project(
        files, gateway_config=config.gateway, policy=config.postprocess,
        budget=config.budget, builtin_methods=config.builtin_methods,
        workers=config.workers)
    for unit_result in result.failed_units:
        print(f"warning: gateway failed for {unit_result.unit.path}: "
              f"{unit_result.error}", file=sys.stderr)

    save_repository(result.templates, args.out)
    report_dir = Path(args.report_dir) if args.report_dir else Path(f"{args.out}.reports")
    report_dir.mkdir(parents=True, exist_ok=True)
    for unit_result in result.units:
        stem = report_dir / unit_result.unit.class_name
        stem.with_suffix(".report.txt").write_text(unit_result.report_text,
                                                   encoding="utf-8")
        stem.with_suffix(".report.json").write_text(
            json.dumps(unit_result.report.to_dict(), indent=2) + "\n",
            encoding="utf-8")

    calls = sum(len(u.sites) for u in result.units)
    paths_found = sum(len(e.paths) for u in result.units for e in u.enumerations)
    accepted = sum(len(u.accepted) for u in result.units)
    rejected = sum(len(u.rejected) for u in result.units)
    elapsed = time.perf_counter() - started
    print(f"{len(files)} of {len(paths)} files parsed, {calls} log calls, "
          f"{paths_found} paths, {accepted} accepted, {rejected} rejected, "
          f"{len(result.templates)} templates -> {args.out} ({elapsed:.3f}s)")
    return EXIT_OK


def _read_lines(source: str) -> list[str]:
    if source == "-":
        return sys.stdin.read().splitlines()
    return Path(source).read_text(encoding="utf-8").splitlines()


def _result_record(result) -> dict:
    record = {"line": result.log_line, "matched": result.matched}
    if result.matched:
        record["template_id"] = result.template_id
        record["template"] = result.template
        record["captures"] = list(result.captures)
    elif result.cluster_id is not None:
        record["cluster_id"] = result.cluster_id
        record["cluster_template"] = result.cluster_template
    return record


def cmd_parse(args: argparse.Namespace) -> int:
    config = _load_config(args)
    templates = load_repository(args.repo)
    compiled = compile_repository(templates, config.allow_empty_inner)
    lines = _read_lines(args.log_input)
    tree = config.make_tree()
    results, counts = run_stream(compiled, lines, tree, config.header_pattern)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            for result in results:
                handle.write(json.dumps(_result_record(result), ensure_ascii=False)
                             + "\n")
    if args.append_blackbox:
        appended = append_repository(tree.export_templates(), args.repo)
        print(f"appended {appended} black-box templates to {args.repo}")

    print(f"{counts.total} lines: {counts.matched} matched, {counts.routed} routed, "
          f"{counts.dropped_empty} dropped (match rate {counts.match_rate:.3f})")
    by_count = sorted(counts.per_template.items(), key=lambda kv: (-kv[1], kv[0]))
    for template_id, count in by_count:
        rendered = compiled.entries[template_id].template.body.render()
        print(f"  {count:8d}  {rendered}")
    return EXIT_OK


def _load_template_lines(path: str) -> list[TemplateBody]:
    if path.endswith(".jsonl"):
        return [template.body for template in load_repository(path)]
    bodies = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        if raw.strip():
            bodies.append(TemplateBody.parse(raw))
    return bodies


def cmd_eval(args: argparse.Namespace) -> int:
    config = _load_config(args)
    parsed = _load_template_lines(args.parsed)
    truth = load_ground_truth(args.truth)
    report = score(parsed, truth)

    if args.log_file:
        unique: list[TemplateBody] = []
        for body in parsed:
            if not any(templates_equal(body, seen) for seen in unique):
                unique.append(body)
        compiled = compile_repository([Template(body=b) for b in unique],
                                      config.allow_empty_inner)
        report.timing = time_online(compiled, _read_lines(args.log_file),
                                    repetitions=args.repetitions,
                                    tree_factory=config.make_tree)

    print(f"precision {report.precision:.3f}  recall {report.recall:.3f}  "
          f"f1 {report.f1:.3f}")
    if report.timing is not None:
        print(f"online parsing time: {report.timing:.4f}s "
              f"(averaged over {args.repetitions} runs)")
    if args.out:
        payload = {
            "precision": report.precision,
            "recall": report.recall,
            "f1": report.f1,
            "matched_pairs": report.matched_pairs,
            "timing": report.timing,
        }
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n",
                                  encoding="utf-8")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    config = _load_config(args)
    paths = _discover(args.project_dir)
    files, failures = _parse_files(paths)
    for failure in failures:
        print(f"warning: skipped {failure}", file=sys.stderr)
    if paths and not files:
        print("error: no source file parsed", file=sys.stderr)
        return EXIT_PARTIAL
    graph = build_call_graph([f.unit for f in files])
    sites = [site for f in files for site in find_log_calls(f.unit)]
    sites.sort(key=lambda site: (site.unit.path, site.line))
    enumerations = [enumerate_paths(site, graph, config.budget,
                                    config.builtin_methods) for site in sites]
    report = build_report(enumerations)
    text = render_report(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                   encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logsmith",
        description="Extract log templates from source code and parse log streams.")
    commands = parser.add_subparsers(dest="command", required=True)

    extract = commands.add_parser(
        "extract", help="analyze a project and extract templates via the gateway")
    extract.add_argument("project_dir")
    extract.add_argument("--out", required=True, metavar="REPO",
                         help="repository output file (JSON lines)")
    extract.add_argument("--report-dir", metavar="DIR",
                         help="directory for static reports (default: REPO.reports)")
    _config_flags(extract)
    extract.set_defaults(handler=cmd_extract)

    parse = commands.add_parser(
        "parse", help="match a log stream against a repository")
    parse.add_argument("repo", help="template repository file")
    parse.add_argument("log_input", help="log file, or - for stdin")
    parse.add_argument("--out", metavar="FILE", help="write match results (JSON lines)")
    parse.add_argument("--append-blackbox", action="store_true",
                       help="append discovered black-box templates to the repository")
    _config_flags(parse)
    parse.set_defaults(handler=cmd_parse)

    evaluate = commands.add_parser(
        "eval", help="score parsed templates against ground truth")
    evaluate.add_argument("parsed",
                          help="templates to score: one per line, or a .jsonl repository")
    evaluate.add_argument("truth", help="ground-truth templates, one per line")
    evaluate.add_argument("--log-file", metavar="FILE",
                          help="also time online parsing of this log file")
    evaluate.add_argument("--repetitions", type=int, default=10)
    evaluate.add_argument("--out", metavar="FILE", help="write the structured report")
    _config_flags(evaluate)
    evaluate.set_defaults(handler=cmd_eval)

    report = commands.add_parser(
        "report", help="print the static-analysis report for a project")
    report.add_argument("project_dir")
    report.add_argument("--out", metavar="FILE", help="write the textual report")
    report.add_argument("--json", metavar="FILE", help="write the structured report")
    _config_flags(report)
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, GroundTruthError, DuplicateTemplate,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
