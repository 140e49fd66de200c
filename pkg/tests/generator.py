"""Random generator of small projects inside the supported source subset.

Programs keep within the shapes the agreement tests need: helper chains
at most three calls deep, at most three return branches per helper, all
helpers return on every branch, and no recursion. Everything is driven by
a seeded Random instance, so a seed fully determines the project.
"""

from __future__ import annotations

import random

WORDS = ("init", "load", "commit", "flush", "retry", "sync", "probe",
         "drain", "open", "close", "bind", "seek")
BUILTINS = ("toUpperCase", "toLowerCase", "trim")
LEVEL_CHOICES = ("debug", "info", "warn", "error", "fatal")


class _Helper:
    def __init__(self, name: str, class_name: str, params: list[str], depth: int):
        self.name = name
        self.class_name = class_name
        self.params = params
        self.depth = depth  # 1 + deepest callee chain below this helper
        self.body_lines: list[str] = []


def _literal(rng: random.Random) -> str:
    word = rng.choice(WORDS)
    decoration = rng.choice(("", "_", ": ", " ", "-"))
    return f'"{word}{decoration}"'


def _atom(rng: random.Random, helper: _Helper, callees: list[_Helper]) -> str:
    choices = ["literal", "literal", "param", "builtin"]
    if callees:
        choices += ["call", "call"]
    kind = rng.choice(choices)
    if kind == "param" and helper.params:
        return rng.choice(helper.params)
    if kind == "builtin" and helper.params:
        return f"{rng.choice(helper.params)}.{rng.choice(BUILTINS)}()"
    if kind == "call" and callees:
        callee = rng.choice(callees)
        args = ", ".join(_call_arg(rng, helper) for _ in callee.params)
        prefix = "" if callee.class_name == helper.class_name else f"{callee.class_name}."
        return f"{prefix}{callee.name}({args})"
    return _literal(rng)


def _call_arg(rng: random.Random, helper: _Helper) -> str:
    if helper.params and rng.random() < 0.5:
        return rng.choice(helper.params)
    return _literal(rng)


def _expr(rng: random.Random, helper: _Helper, callees: list[_Helper],
          max_calls: int) -> str:
    atoms = []
    budget = max_calls
    for _ in range(rng.randint(1, 3)):
        usable = callees if budget > 0 else []
        atom = _atom(rng, helper, usable)
        if "(" in atom and not atom.endswith("()"):  # helper call consumed budget
            budget -= 1
        atoms.append(atom)
    return " + ".join(atoms)


def _condition(rng: random.Random, helper: _Helper) -> str:
    if helper.params and rng.random() < 0.7:
        return f'{rng.choice(helper.params)}.startsWith("{rng.choice(WORDS)}")'
    return f'"{rng.choice(WORDS)}".equals({rng.choice(helper.params) if helper.params else "value"})'


def _helper_body(rng: random.Random, helper: _Helper, callees: list[_Helper]) -> None:
    branches = rng.choice((1, 2, 2, 3))
    if branches == 1:
        helper.body_lines = [f"    return {_expr(rng, helper, callees, 1)};"]
        return
    lines = [f"    if ({_condition(rng, helper)}) {{",
             f"      return {_expr(rng, helper, callees, 1)};"]
    if branches == 3:
        lines += [f"    }} else if ({_condition(rng, helper)}) {{",
                  f"      return {_expr(rng, helper, callees, 1)};"]
    lines += ["    } else {",
              f"      return {_expr(rng, helper, callees, 1)};",
              "    }"]
    helper.body_lines = lines


def generate_project(seed: int) -> list[tuple[str, str]]:
    """Generate (path, source) pairs: a Main class with one log call, plus helpers."""
    rng = random.Random(seed)
    helper_count = rng.randint(1, 4)
    class_names = ["Main", "Aux"] if rng.random() < 0.5 else ["Main"]

    helpers: list[_Helper] = []
    for index in range(helper_count):
        class_name = rng.choice(class_names)
        params = ["a", "b"][:rng.randint(1, 2)]
        helper = _Helper(f"h{index}", class_name, params, depth=1)
        # callees must sit strictly later in the list (no recursion) and
        # keep the chain at three levels or fewer
        callees = [h for h in helpers if h.depth < 3]
        _helper_body(rng, helper, callees)
        helper.depth = 1 + max((h.depth for h in helpers
                                if h.name in " ".join(helper.body_lines)), default=0)
        helpers.append(helper)

    main_helper = _Helper("run", "Main", ["value"], depth=0)
    usable = [h for h in helpers if h.depth < 3]
    if rng.random() < 0.15 or not usable:
        placeholders = rng.randint(0, 2)
        text = rng.choice(WORDS) + " {}" * placeholders
        args = "".join(", value" for _ in range(placeholders))
        log_arg = f'"{text}"{args}'
    else:
        log_arg = _expr(rng, main_helper, usable, 2)
    level = rng.choice(LEVEL_CHOICES)

    files = []
    for class_name in class_names:
        lines = ["package com.gen;", ""]
        if class_name == "Main" and "Aux" in class_names:
            lines += ["import com.gen.Aux;", ""]
        lines.append(f"public class {class_name} {{")
        if class_name == "Main":
            lines += [
                "  public void run(String value) {",
                f"    log.{level}({log_arg});",
                "  }",
                "",
            ]
        for helper in helpers:
            if helper.class_name != class_name:
                continue
            params = ", ".join(f"String {p}" for p in helper.params)
            lines.append(f"  public static String {helper.name}({params}) {{")
            lines += helper.body_lines
            lines += ["  }", ""]
        while lines and lines[-1] == "":
            lines.pop()
        lines.append("}")
        files.append((f"{class_name}.java", "\n".join(lines) + "\n"))
    return files
