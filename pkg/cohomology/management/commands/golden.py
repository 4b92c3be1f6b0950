import json

from django.core.management.base import BaseCommand, CommandError

from cohomology.golden import golden_suite
from cohomology.jobs import MATH_ERROR, USAGE_ERROR


class Command(BaseCommand):
    help = "Run the golden acceptance items"

    def add_arguments(self, parser):
        parser.add_argument("--only", nargs="+", metavar="ID", help="run only these item ids")
        parser.add_argument("--json", action="store_true", help="print one JSON list of results")
        parser.add_argument("--file", help="golden YAML file (defaults to EQCOH_GOLDEN_FILE)")

    def handle(self, *args, **options):
        try:
            results = golden_suite(only=options["only"], path=options["file"])
        except KeyError as exc:
            raise CommandError(exc.args[0], returncode=USAGE_ERROR)

        if options["json"]:
            self.stdout.write(json.dumps([r.model_dump() for r in results], indent=2))
        else:
            for r in results:
                line = f"{'PASS' if r.ok else 'FAIL'} {r.id}: {r.detail}"
                self.stdout.write(self.style.SUCCESS(line) if r.ok else self.style.ERROR(line))

        failed = [r.id for r in results if not r.ok]
        if failed:
            raise CommandError(f"{len(failed)} golden items failed: {', '.join(failed)}", returncode=MATH_ERROR)
