"""
Compute equivariant cohomology presentations from the command line.

    python manage.py eqcoh present --variety gr:2,4 --group psl2-borel:4
    python manage.py eqcoh fiber --variety pn:3 --group psl2-kostant:4 --at 1
    python manage.py eqcoh kostant-conj --group borel:sl3 --at 1,3

Exit status 1 means the options or a grammar string were rejected, 2 means a
mathematical check failed.
"""

import sys

from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from cohomology.jobs import MATH_ERROR, USAGE_ERROR, JobSpec, run


class Command(BaseCommand):
    help = "Zero-scheme presentations, fibers, components and conjugators"

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE_ERROR, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=USAGE_ERROR)

        parser.error = error
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            "job",
            choices=["present", "hilbert", "fiber", "components", "kostant-conj", "unif-conj", "gkm"],
        )
        parser.add_argument("--variety", help="pn:N, gr:K,N, flag:N, flag:d1,..,dr or bs:i1,..,il@slN")
        parser.add_argument("--group", help="borel:slN, kostant:slN, psl2-borel:N or psl2-kostant:N")
        parser.add_argument("--at", help="comma separated rationals for the group parameters")
        parser.add_argument("--format", choices=["text", "json"], default="text")
        parser.add_argument(
            "--paper-sign", action="store_true",
            help="print with every parameter of weight 2 mod 4 negated",
        )
        parser.add_argument("--strategy", choices=["auto", "triangular", "groebner"], default="auto")
        parser.add_argument("--coordinate", help="cell coordinate localized by gkm")

    def handle(self, *args, **options):
        try:
            job = JobSpec(
                command=options["job"],
                variety=options["variety"],
                group=options["group"],
                at=options["at"],
                format=options["format"],
                paper_sign=options["paper_sign"],
                strategy=options["strategy"],
                coordinate=options["coordinate"],
            )
        except ValidationError as exc:
            messages = "; ".join(err["msg"] for err in exc.errors())
            raise CommandError(messages, returncode=USAGE_ERROR)

        result = run(job)
        if result.status == USAGE_ERROR:
            raise CommandError(result.error, returncode=USAGE_ERROR)
        if result.status == MATH_ERROR:
            raise CommandError(result.error, returncode=MATH_ERROR)
        self.stdout.write(result.output)
