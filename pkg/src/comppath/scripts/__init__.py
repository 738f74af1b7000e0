from importlib import resources

from .core import (Axiom, ProofScript, ScriptStep, ScriptSyntaxError, StepRecord,
                   VerificationReport, format_script, parse_script, reverse_script,
                   verify_script)


def bundled_names() -> list[str]:
    root = resources.files(__package__) / "bundled"
    return sorted(p.name[:-len(".proof")] for p in root.iterdir() if p.name.endswith(".proof"))


def load_bundled(name: str) -> ProofScript:
    text = (resources.files(__package__) / "bundled" / f"{name}.proof").read_text(encoding="utf-8")
    return parse_script(text, name)


def bundled_paper_suite(*, strict_rule39: bool = False) -> list[tuple[str, VerificationReport]]:
    """Verify every bundled script, in alphabetical order."""
    return [(name, verify_script(load_bundled(name), strict_rule39=strict_rule39))
            for name in bundled_names()]
