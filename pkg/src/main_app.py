"""Command-line application for the Salem Entropy Toolkit."""

import argparse
import sys
from fractions import Fraction

from . import __version__
from .config import APP_TITLE
from .errors import InputError, NotSalemError, SalemToolkitError
from .algebra.matrices import charpoly
from .algebra.polycore import strip_cyclotomic_factors, trace_poly
from .algebra.salem import classify_salem, entropy, enumerate_salem
from .external.files import (
    ISOMETRY_KIND, document_kind, isometry_from_document, read_document, witness_from_document,
    write_document,
)
from .surfaces.k3 import K3Verdict, k3_classify, verify_extension_mechanics
from .surfaces.lattice import is_even, is_isometry, is_unimodular, signature
from .surfaces.torus import decide_torus, projective_flags, verify_witness
from .ui.poly_text import format_poly, parse_poly
from .ui.report import (
    Report, bracket_payload, bracket_text, classification_payload, classification_text,
    entropy_payload, entropy_text, k3_payload, k3_text, poly_payload, signature_payload,
    extension_payload, extension_text, torus_payload, torus_text, witness_report_payload,
    witness_report_text,
)
from .utils.logger import get_logger
from .utils.settings_manager import SettingsManager
from .utils.timing import Stopwatch

logger = get_logger()

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NEGATIVE = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage problems as InputError instead of exiting."""

    def error(self, message):
        raise InputError(message)


def _rational_power(text: str) -> Fraction:
    base, caret, exponent = text.partition("^")
    return Fraction(int(base)) ** int(exponent) if caret else Fraction(text)


def parse_tolerance(text) -> Fraction:
    """Positive rational from "1/1000", "1e-12", "1/10^12" or "10^-12"."""
    try:
        num, slash, den = text.partition("/")
        tol = _rational_power(num) / _rational_power(den) if slash else _rational_power(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"Invalid tolerance {text!r}: {e}")
    if tol <= 0:
        raise InputError(f"Tolerance must be positive, got {text}")
    return tol


class SalemToolkitApp:
    """Main application class: parses arguments and runs one subcommand."""

    def __init__(self, settings_manager=None, stdout=None):
        """
        Initialize the application.

        Args:
            settings_manager: Optional SettingsManager instance
            stdout: Stream for reports (defaults to sys.stdout)
        """
        self.settings_manager = settings_manager or SettingsManager()
        if settings_manager is None:
            self.settings_manager.load_settings()
        self.stdout = stdout
        self.parser = self._build_parser()

    def _build_parser(self):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", help="emit the machine-readable report")
        common.add_argument("--tol", help="bracket tolerance as a rational, e.g. 1/10^12 or 1e-12")
        common.add_argument("--out", help="also write the JSON report (torus: the witness) to this file")
        common.add_argument("--workers", type=int, help="worker threads for enumerate")

        parser = _ArgumentParser(prog="salem-entropy", description=APP_TITLE)
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
        sub.required = True

        for name, text in (
            ("classify", "decide whether a polynomial is Salem and bracket lambda"),
            ("torus", "torus realizability with a verified witness"),
            ("k3", "K3 realizability conditions"),
            ("entropy", "log(lambda) with an error bound"),
            ("trace", "trace polynomial R with S(t) = t^(d/2) R(t + 1/t)"),
        ):
            cmd = sub.add_parser(name, help=text, parents=[common])
            cmd.add_argument("polynomial", help='"1,-3,1" (descending) or "t^2-3t+1"')

        cmd = sub.add_parser("enumerate", help="all Salem polynomials of a degree with bounded coefficients",
                             parents=[common])
        cmd.add_argument("--degree", type=int, required=True)
        cmd.add_argument("--bound", type=int, required=True)

        cmd = sub.add_parser("verify", help="re-check a witness or isometry document", parents=[common])
        cmd.add_argument("path")
        return parser

    # --- helpers ---
    def _tolerance(self, args):
        if args.tol is None:
            return self.settings_manager.tolerance()
        return parse_tolerance(args.tol)

    def _digits(self):
        return int(self.settings_manager.get("DISPLAY_DIGITS", 12))

    def _emit(self, text):
        print(text, file=self.stdout or sys.stdout)

    # --- subcommands ---
    def cmd_classify(self, args):
        S = parse_poly(args.polynomial)
        tol = self._tolerance(args)
        verdict = classify_salem(S, tol)
        estimate = None
        if verdict.is_salem or verdict.is_cyclotomic_only:
            estimate = entropy(S, tol)
        digits = self._digits()
        return Report("classify", args.polynomial, classification_payload(verdict, estimate, digits),
                      exit_code=EXIT_OK if verdict.is_salem else EXIT_NEGATIVE,
                      summary=classification_text(verdict, estimate, digits))

    def cmd_torus(self, args):
        S = parse_poly(args.polynomial)
        res = decide_torus(S, self._tolerance(args))
        flags = projective_flags(S)
        return Report("torus", args.polynomial, torus_payload(res, flags),
                      exit_code=EXIT_OK if res.realizable else EXIT_NEGATIVE,
                      summary=torus_text(res, flags))

    def cmd_k3(self, args):
        S = parse_poly(args.polynomial)
        r = k3_classify(S, self._tolerance(args))
        return Report("k3", args.polynomial, k3_payload(r),
                      exit_code=EXIT_NEGATIVE if r.verdict is K3Verdict.CONDITIONS_FAIL else EXIT_OK,
                      summary=k3_text(r))

    def cmd_entropy(self, args):
        S = parse_poly(args.polynomial)
        estimate = entropy(S, self._tolerance(args))
        digits = self._digits()
        return Report("entropy", args.polynomial,
                      {"polynomial": poly_payload(S), "entropy": entropy_payload(estimate, digits)},
                      summary=[f"{format_poly(S)}: entropy {entropy_text(estimate, digits)}"])

    def cmd_trace(self, args):
        S = parse_poly(args.polynomial)
        R = trace_poly(S)
        return Report("trace", args.polynomial,
                      {"polynomial": poly_payload(S), "trace_polynomial": poly_payload(R)},
                      summary=[f"{format_poly(S)} = t^{S.degree // 2} R(t + 1/t) with R = {format_poly(R)}"])

    def cmd_enumerate(self, args):
        tol = self._tolerance(args)
        found = enumerate_salem(args.degree, args.bound, tol, workers=args.workers)
        digits = self._digits()
        entries = [{"polynomial": poly_payload(v.input), "lambda": bracket_payload(v.lam, digits)} for v in found]
        summary = [f"{len(found)} Salem polynomials of degree {args.degree} with coefficients in "
                   f"[-{args.bound}, {args.bound}]"]
        summary.extend(f"  {bracket_text(v.lam, digits)}  {format_poly(v.input)}" for v in found)
        return Report("enumerate", {"degree": args.degree, "bound": args.bound},
                      {"degree": args.degree, "bound": args.bound, "count": len(found), "polynomials": entries},
                      summary=summary)

    def cmd_verify(self, args):
        doc = read_document(args.path)
        if document_kind(doc) == ISOMETRY_KIND:
            return self._verify_isometry(args, doc)
        w = witness_from_document(doc)
        r = verify_witness(w)
        summary = [f"witness for {format_poly(w.S)} (case {w.case}): {'all checks pass' if r.passed else 'FAILED'}"]
        summary.extend(witness_report_text(r))
        return Report("verify", args.path, {"kind": "witness", "verification": witness_report_payload(r)},
                      exit_code=EXIT_OK if r.passed else EXIT_NEGATIVE, summary=summary)

    def _verify_isometry(self, args, doc):
        iso = isometry_from_document(doc)
        label = iso.name or args.path
        ok = is_isometry(iso.matrix, iso.gram)
        sig = signature(iso.gram)
        char = charpoly(iso.matrix)
        result = {
            "kind": "isometry",
            "name": iso.name,
            "is_isometry": ok,
            "signature": signature_payload(sig),
            "even": is_even(iso.gram),
            "unimodular": is_unimodular(iso.gram),
            "charpoly": format_poly(char),
            "extension": None,
        }
        summary = [f"{label}: {'isometry' if ok else 'NOT an isometry'} of a form of signature {sig}",
                   f"  characteristic polynomial {format_poly(char)}"]
        exit_code = EXIT_OK if ok else EXIT_NEGATIVE
        core, _ = strip_cyclotomic_factors(char)
        if ok and core.degree > 0 and classify_salem(core).is_salem:
            mech = verify_extension_mechanics(iso.matrix, iso.gram)
            result["extension"] = extension_payload(mech)
            summary.extend(extension_text(mech))
            if not mech.passed:
                exit_code = EXIT_NEGATIVE
        return Report("verify", args.path, result, exit_code=exit_code, summary=summary)

    # --- driver ---
    def run(self, argv=None):
        """
        Parse arguments, run the subcommand and print its report.

        Args:
            argv (list): Arguments without the program name

        Returns:
            int: 0 on success, 1 on input errors, 2 on negative verdicts
        """
        try:
            args = self.parser.parse_args(argv)
        except InputError as e:
            logger.error(f"Usage error: {e}")
            return EXIT_INPUT_ERROR

        stopwatch = Stopwatch().start()
        handler = getattr(self, f"cmd_{args.command}")
        try:
            report = handler(args)
        except InputError as e:
            logger.error(f"Input error: {e}")
            return EXIT_INPUT_ERROR
        except NotSalemError as e:
            logger.error(f"{e}")
            return EXIT_NEGATIVE
        except SalemToolkitError as e:
            logger.error(f"Computation failed: {e}")
            return EXIT_NEGATIVE
        except Exception as e:
            logger.error(f"Unexpected error in {args.command}: {type(e).__name__}: {e}")
            return EXIT_NEGATIVE
        report.timing = round(stopwatch.stop(), 6)
        logger.info(f"Command {args.command} finished in {report.timing:.3f}s with exit code {report.exit_code}")

        if args.out:
            witness = report.result.get("witness") if args.command == "torus" else None
            try:
                write_document(witness or report.to_dict(), args.out)
            except InputError as e:
                logger.error(f"{e}")
                return EXIT_INPUT_ERROR
        self._emit(report.to_json() if args.json else report.to_text())
        return report.exit_code


def main(argv=None):
    """Main entry point for the application."""
    return SalemToolkitApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
