"""Per-unit extraction orchestration: analyze, prompt, invoke, post-process.

A unit with no logging calls short-circuits before any gateway traffic.
For the rest, the prompt carries the unit's source plus the source of
every project class its call paths actually enter, alongside the rendered
static-analysis report. Gateway failures are recorded per unit and leave
that unit's logs to the black-box path; they never abort the project run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..analyzer import (
    CallGraph,
    DEFAULT_BUILTIN_METHODS,
    KIND_USER,
    LogCallSite,
    PathBudget,
    PathEnumeration,
    SourceUnit,
    StaticReport,
    build_call_graph,
    build_report,
    enumerate_paths,
    find_log_calls,
    render_report,
)
from ..templates import Template, level_rank
from .gateway import GatewayConfig, GatewayError, invoke_gateway, make_gateway
from .postprocess import PostProcessPolicy, Rejection, post_process
from .prompt import PromptBundle, build_prompt
from .responses import ExtractedTemplate, parse_response


@dataclass(frozen=True)
class ProjectFile:
    unit: SourceUnit
    text: str


@dataclass
class UnitExtraction:
    unit: SourceUnit
    sites: list[LogCallSite]
    enumerations: list[PathEnumeration]
    report: StaticReport
    report_text: str
    prompt: PromptBundle | None = None
    raw_response: str | None = None
    records: list[ExtractedTemplate] = field(default_factory=list)
    accepted: list[Template] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)
    error: str | None = None


@dataclass
class ProjectExtraction:
    units: list[UnitExtraction]
    templates: list[Template]

    @property
    def failed_units(self) -> list[UnitExtraction]:
        return [u for u in self.units if u.error is not None]


def extract_unit(entry: ProjectFile, project: dict[str, ProjectFile],
                 graph: CallGraph, gateway=None, *,
                 gateway_config: GatewayConfig = GatewayConfig(),
                 policy: PostProcessPolicy = PostProcessPolicy(),
                 budget: PathBudget = PathBudget(),
                 builtin_methods=DEFAULT_BUILTIN_METHODS) -> UnitExtraction:
    unit = entry.unit
    sites = find_log_calls(unit)
    enumerations = [enumerate_paths(site, graph, budget, builtin_methods)
                    for site in sites]
    report = build_report(enumerations)
    report_text = render_report(report)
    result = UnitExtraction(unit=unit, sites=sites, enumerations=enumerations,
                            report=report, report_text=report_text)
    if not sites:
        return result

    result.prompt = build_prompt(_java_code(entry, project, enumerations), report_text)
    if gateway is None:
        gateway = make_gateway(gateway_config)
    try:
        result.raw_response = invoke_gateway(result.prompt, gateway_config, gateway)
    except GatewayError as exc:
        result.error = str(exc)
        return result
    result.records = parse_response(result.raw_response)
    result.accepted, result.rejected = post_process(result.records, policy, gateway)
    return result


def _java_code(entry: ProjectFile, project: dict[str, ProjectFile],
               enumerations: list[PathEnumeration]) -> str:
    """The unit's source plus every project class its paths step into."""
    involved: set[str] = set()
    for enumeration in enumerations:
        for path in enumeration.paths:
            for step in path.steps:
                if step.callee_kind == KIND_USER:
                    involved.add(step.class_fqn)
    involved.discard(entry.unit.fqn)
    parts = [entry.text]
    for fqn in sorted(involved):
        other = project.get(fqn)
        if other is not None:
            parts.append(other.text)
    return "".join(text if text.endswith("\n") else text + "\n" for text in parts)


def extract_project(files: list[ProjectFile], gateway=None, *,
                    gateway_config: GatewayConfig = GatewayConfig(),
                    policy: PostProcessPolicy = PostProcessPolicy(),
                    budget: PathBudget = PathBudget(),
                    builtin_methods=DEFAULT_BUILTIN_METHODS,
                    workers: int = 1) -> ProjectExtraction:
    """Run extraction over every parsed file and merge the accepted templates.

    With ``workers > 1``, units are extracted concurrently (the parsed
    project is immutable and gateways are called at most ``workers`` at a
    time); results keep the input file order either way.
    """
    graph = build_call_graph([f.unit for f in files])
    project = {f.unit.fqn: f for f in files}
    if gateway is None:
        gateway = make_gateway(gateway_config)

    def run_one(entry: ProjectFile) -> UnitExtraction:
        return extract_unit(entry, project, graph, gateway,
                            gateway_config=gateway_config, policy=policy,
                            budget=budget, builtin_methods=builtin_methods)

    if workers > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            units = list(pool.map(run_one, files))
    else:
        units = [run_one(f) for f in files]
    merged: dict = {}
    for unit_result in units:
        for template in unit_result.accepted:
            existing = merged.get(template.body)
            if existing is None:
                merged[template.body] = template
            else:
                level = existing.level
                if template.level and (level is None or
                                       level_rank(template.level) < level_rank(level)):
                    level = template.level
                methods = tuple(sorted(set(existing.methods) | set(template.methods)))
                merged[template.body] = Template(body=template.body, level=level,
                                                 methods=methods)
    return ProjectExtraction(units=units, templates=list(merged.values()))
