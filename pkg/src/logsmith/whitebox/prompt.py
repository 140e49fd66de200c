"""Extraction prompt construction.

The instruction text is fixed; a prompt is the instructions with the two
input slots filled in: the source code under analysis and the rendered
static-analysis report. Slot substitution is plain string replacement so
the literal braces in the instructions survive untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

PROMPT_TEMPLATE = """\
You are an expert Java log template extractor. Please extract all log templates by given the source code and static analysis report.

Input format:
- Java source code
- Static analysis report containing:
  - Location, method name, and initial template for each log call
  - Call paths (cross-method/cross-file), showing for each level:
    - Class: fully qualified class name (e.g., com.example.A)
    - Call code: method invocation statement
    - Called function info: The source code of the called function

Your task:
- For each log call and each of its paths, construct the final log template by concatenating string literals extracted from return statements across the call chain.
- Replace the following with <.*>:
  - Unknown functions,
  - Built-in methods,
  - Variable names,
  - Any non-literal string components,
  - All {} placeholders in the original log statement (SLF4J style), regardless of their runtime value.
- Preserve all deterministic string constants exactly as they appear.
- Output must be a JSON array. Each element has the format: {"method": class_path.method_name, "template": constructed_template, "level": log_level}

Now process the following input:
- java_code: {java_code}
- static_analysis_report:
{static_analysis_report}
"""

_CODE_SLOT = "{java_code}"
_REPORT_SLOT = "{static_analysis_report}"


@dataclass(frozen=True)
class PromptBundle:
    system_instructions: str
    java_code: str
    static_analysis_report: str

    def render(self) -> str:
        """The full prompt text sent to the gateway."""
        text = self.system_instructions
        text = text.replace(_CODE_SLOT, self.java_code, 1)
        text = text.replace(_REPORT_SLOT, self.static_analysis_report, 1)
        return text


def build_prompt(java_code: str, static_analysis_report: str) -> PromptBundle:
    """Embed source text and the rendered report into the fixed instructions."""
    return PromptBundle(
        system_instructions=PROMPT_TEMPLATE,
        java_code=java_code,
        static_analysis_report=static_analysis_report,
    )
