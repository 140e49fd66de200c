"""Gateway transport for template extraction.

Two implementations sit behind one ``send`` interface: an HTTP gateway
speaking the chat-completion wire format, and a deterministic mock that
re-derives templates mechanically from the source code embedded in the
prompt. The mock keeps the whole test suite network-free and reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import requests

from ..templates import TemplateBody
from .prompt import PromptBundle
from .responses import MalformedResponse, parse_response, render_records, ExtractedTemplate

API_KEY_VARIABLE = "LOGSMITH_API_KEY"

VERIFIER_PREFIX = (
    'You are a log template reviewer. Answer strictly "yes" or "no": '
    "does the following log template meaningfully discriminate failure modes?"
)


def build_verifier_prompt(template_text: str) -> str:
    return f"{VERIFIER_PREFIX}\n\nTemplate: {template_text}\n"


@dataclass(frozen=True)
class GatewayConfig:
    endpoint: str = "mock:"
    model: str = "mock-extractor"
    temperature: float = 0.1
    timeout: float = 30.0
    max_retries: int = 2

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


class GatewayError(Exception):
    """Base class for gateway transport failures."""


class GatewayUnavailable(GatewayError):
    pass


class GatewayTimeout(GatewayError):
    pass


class RetriesExhausted(GatewayError):
    def __init__(self, attempts: int, last_error: Exception):
        super().__init__(f"gave up after {attempts} attempts: {last_error}")
        self.attempts = attempts
        self.last_error = last_error


class HttpGateway:
    """Chat-completion style HTTP transport.

    Credentials come from the LOGSMITH_API_KEY environment variable; the
    request carries model, temperature and the prompt as a single user
    message.
    """

    def __init__(self, config: GatewayConfig):
        self.config = config

    def send(self, prompt: str) -> str:
        headers = {}
        api_key = os.environ.get(API_KEY_VARIABLE)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        payload = {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        try:
            response = requests.post(self.config.endpoint, json=payload,
                                     headers=headers, timeout=self.config.timeout)
        except requests.Timeout as exc:
            raise GatewayTimeout(str(exc)) from exc
        except requests.RequestException as exc:
            raise GatewayUnavailable(str(exc)) from exc
        if response.status_code >= 400:
            raise GatewayUnavailable(f"endpoint returned HTTP {response.status_code}")
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise GatewayUnavailable(f"unexpected response shape: {exc}") from exc


class MockGateway:
    """Deterministic stand-in for a hosted model.

    Extraction prompts are answered by re-parsing the source code carried
    in the prompt's java_code slot and applying the replacement rules the
    instructions mandate: string literals stay, and every identifier,
    built-in call, unknown call and ``{}`` placeholder becomes a wildcard
    — exactly one record per enumerated path. Verifier prompts are
    answered "yes" when the template keeps at least one alphanumeric
    constant character, "no" otherwise.
    """

    CODE_MARKER = "- java_code: "
    REPORT_MARKER = "\n- static_analysis_report:"

    def send(self, prompt: str) -> str:
        if prompt.startswith(VERIFIER_PREFIX):
            return self._verify(prompt)
        return self._extract(prompt)

    def _verify(self, prompt: str) -> str:
        marker = "Template: "
        start = prompt.find(marker)
        template_text = prompt[start + len(marker):].strip() if start >= 0 else ""
        body = TemplateBody.parse(template_text)
        keeps_content = any(ch.isalnum() for const in body.constants for ch in const)
        return "yes" if keeps_content else "no"

    def _extract(self, prompt: str) -> str:
        from ..analyzer import (
            build_call_graph,
            enumerate_paths,
            find_log_calls,
            parse_source,
        )

        java_code = self._java_code(prompt)
        units = []
        for index, chunk in enumerate(_split_units(java_code)):
            units.append(parse_source(chunk, path=f"<prompt:{index}>"))
        graph = build_call_graph(units)
        records = []
        for unit in units:
            for site in find_log_calls(unit):
                enumeration = enumerate_paths(site, graph)
                for path in enumeration.paths:
                    records.append(ExtractedTemplate(
                        method=f"{unit.fqn}.{site.enclosing_method}",
                        template=path.yielded.render(),
                        level=site.level,
                    ))
        return render_records(records)

    def _java_code(self, prompt: str) -> str:
        start = prompt.find(self.CODE_MARKER)
        end = prompt.find(self.REPORT_MARKER)
        if start < 0 or end < 0 or end <= start:
            return ""
        return prompt[start + len(self.CODE_MARKER):end]


def _split_units(java_code: str) -> list[str]:
    """Split concatenated source files at their package declarations."""
    chunks: list[str] = []
    current: list[str] = []
    for line in java_code.splitlines():
        if line.startswith("package ") and current and any(s.strip() for s in current):
            chunks.append("\n".join(current) + "\n")
            current = []
        current.append(line)
    if any(s.strip() for s in current):
        chunks.append("\n".join(current) + "\n")
    return chunks


def make_gateway(config: GatewayConfig):
    if config.endpoint.startswith("mock"):
        return MockGateway()
    return HttpGateway(config)


def invoke_gateway(bundle: PromptBundle, config: GatewayConfig, gateway=None) -> str:
    """Send the prompt, retrying on transport errors and unparseable output.

    Performs up to ``max_retries + 1`` attempts and returns the first raw
    response whose text parses as a record array. Raises RetriesExhausted
    once attempts run out.
    """
    if gateway is None:
        gateway = make_gateway(config)
    prompt = bundle.render()
    attempts = config.max_retries + 1
    last_error: Exception | None = None
    for _ in range(attempts):
        try:
            text = gateway.send(prompt)
            parse_response(text)
            return text
        except (GatewayUnavailable, GatewayTimeout, MalformedResponse) as exc:
            last_error = exc
    raise RetriesExhausted(attempts, last_error)
