#!/usr/bin/env python3
"""
Semi-local Trace Formula Engine
Main application entry point
"""

import argparse
import logging
import sys

import pandas as pd

from config.settings import Settings
from core.exceptions import ConfigError, EngineError, PlaceSetError
from core.experiment import decay_rate, run_experiment
from core.places import enumerate_places
from core.selftest import run_selftest
from core.trace_engine import (build_tilde_Q, eigenvector_split, small_class_eigenvalue,
                               small_class_eigenvalue_expected)
from core.weil_rhs import check_outside_vanishing, h_hats, log_prime, weil_local_terms
from data.import_export import export_report, load_config, parse_config
from data.sample_data import DEFAULT_CONFIG, SAMPLE_KERNELS, SampleDataLoader
from utils.helpers import format_duration, format_rational, format_scalar
from utils.validators import validate_q

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAILURE = 2


class TraceApp:
    """Command-line application around the trace engine"""

    def __init__(self, args):
        self.args = args
        self._setup_logging()

    def _setup_logging(self):
        """Setup application logging"""
        logging.basicConfig(
            level=logging.DEBUG if self.args.verbose else logging.INFO,
            format=Settings.LOG_FORMAT
        )

    def _config(self):
        if self.args.config:
            config = load_config(self.args.config)
        else:
            config = parse_config(DEFAULT_CONFIG)
        if getattr(self.args, "kernel", None):
            config.h = dict(SampleDataLoader(config.q).kernel(self.args.kernel).values)
        if getattr(self.args, "format", None):
            config.format = self.args.format
        return config

    def _emit(self, text):
        out = getattr(self.args, "out", None)
        if out and self.args.command != "trace":
            with open(out, 'w', encoding='utf-8') as f:
                f.write(text)
        else:
            print(text)

    def run(self):
        handlers = {
            "trace": self.trace,
            "selftest": self.selftest,
            "places": self.places,
            "weil": self.weil,
            "dims": self.dims,
        }
        try:
            return handlers[self.args.command]()
        except (ConfigError, PlaceSetError) as e:
            logger.error(f"Invalid configuration: {e}")
            return EXIT_CONFIG
        except EngineError as e:
            logger.error(f"Computation failed: {e}")
            return EXIT_FAILURE

    def trace(self):
        config = self._config()
        reports = run_experiment(config, jobs=self.args.jobs)
        text = export_report(reports, config.format, config.mode, config.precision, self.args.out)
        if not self.args.out:
            print(text, end="")
        for column in ("gap_lemma35", "gap_thm31"):
            rate = decay_rate(reports, column, config.mode)
            if rate is not None:
                logger.info(f"{column}: log-slope {rate:.4f} per unit of k")
                if rate > -Settings.FLOAT_TOLERANCE:
                    logger.warning(f"{column} does not decay with k")
        for report in reports:
            mismatch = report.quotient_mismatch(config.mode)
            if mismatch is not None and abs(mismatch) > Settings.FLOAT_TOLERANCE:
                logger.warning(f"k={report.k}: tr Q - tr Q_0 is off the paired eigenvalues by {mismatch}")
        total = sum(report.seconds for report in reports)
        logger.info(f"{len(reports)} rows in {format_duration(total)}")
        return EXIT_OK

    def selftest(self):
        results = run_selftest()
        frame = pd.DataFrame([(r.name, "pass" if r.passed else "FAIL", r.detail) for r in results],
                             columns=["suite", "status", "detail"])
        self._emit(frame.to_string(index=False))
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE

    def places(self):
        ok, message = validate_q(self.args.q)
        if not ok:
            raise ConfigError(message)
        rows = [(str(place), place.spec(), place.degree, place.q_v, place.order)
                for place in enumerate_places(self.args.q, self.args.degree)]
        frame = pd.DataFrame(rows, columns=["place", "spec", "degree", "q_v", "order"])
        lines = [frame.to_string(index=False)]
        if self.args.config:
            place_set = self._config().place_set()
            monoid = place_set.monoid()
            lines.append(f"S = {place_set}  c_S = {format_rational(place_set.c_S)}  anchor = {place_set.anchor}")
            lines.append("M_a: " + ", ".join(format_rational(monoid.mobius(a)) for a in range(8)))
            lines.append("N_a: " + ", ".join(format_rational(monoid.count(a)) for a in range(8)))
        self._emit("\n".join(lines))
        return EXIT_OK

    def weil(self):
        config = self._config()
        place_set = config.place_set()
        h = config.hfunction()
        rows = [(str(place), format_scalar(term))
                for place, term in weil_local_terms(h, place_set).items()]
        h0, h1 = h_hats(h)
        rows.append(("h^(0)", format_scalar(h0)))
        rows.append(("h^(1)", format_scalar(h1)))
        for k in range(config.k_min, config.k_max + 1):
            rows.append((f"log' q^{k}", format_scalar(log_prime(place_set, place_set.q_0 ** k))))
        r = h.radius()
        for place in enumerate_places(config.q, r + 1):
            if place.degree == r + 1 and place not in place_set.places:
                vanishes, value = check_outside_vanishing(h, place, r, place_set)
                rows.append((f"outside {place}", format_scalar(value)))
                if not vanishes:
                    logger.error(f"Local term at {place} does not vanish")
                    self._emit(pd.DataFrame(rows, columns=["term", "log q units"]).to_string(index=False))
                    return EXIT_FAILURE
        self._emit(pd.DataFrame(rows, columns=["term", "log q units"]).to_string(index=False))
        return EXIT_OK

    def dims(self):
        config = self._config()
        place_set = config.place_set()
        rows = []
        for k in range(config.k_min, config.k_max + 1):
            spaces = build_tilde_Q(place_set, k, config.depth)
            row = spaces.dimensions()
            row["eigenvalue_ok"] = all(small_class_eigenvalue(spaces, e)
                                       == small_class_eigenvalue_expected(place_set, k, e)
                                       for e in (0, -1))
            diagnostic = eigenvector_split(spaces)
            row["q1_ratio"] = format_rational(diagnostic.ratio)
            row["e1_orthogonal"] = diagnostic.orthogonal
            rows.append(row)
        self._emit(pd.DataFrame(rows).to_string(index=False))
        return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(description="Semi-local trace identity over F_q(t)")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("trace", "trace table over Lambda = q^k"),
                       ("weil", "right-hand side terms"),
                       ("dims", "saturated dimensions and eigenvector diagnostics")):
        command = sub.add_parser(name, help=text)
        command.add_argument("--config", help="experiment config file")
        command.add_argument("--out", help="output file")
        command.add_argument("--kernel", choices=sorted(SAMPLE_KERNELS), help="named sample kernel h")
        if name == "trace":
            command.add_argument("--format", choices=Settings.FORMATS)
            command.add_argument("--jobs", type=int, default=Settings.DEFAULT_JOBS)

    command = sub.add_parser("selftest", help="run the oracle suites")
    command.add_argument("--out", help="output file")

    command = sub.add_parser("places", help="list places of small degree")
    command.add_argument("--q", type=int, default=Settings.DEFAULT_Q)
    command.add_argument("--degree", type=int, default=2)
    command.add_argument("--config", help="also validate the place set of this config")
    command.add_argument("--out", help="output file")
    return parser


def main(argv=None):
    """Main application entry point"""
    args = build_parser().parse_args(argv)
    app = TraceApp(args)
    return app.run()


if __name__ == "__main__":
    sys.exit(main())
