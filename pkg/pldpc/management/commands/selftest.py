from django.core.management.base import BaseCommand, CommandError

from pldpc.coding.oracles import run_selftest


class Command(BaseCommand):
    help = 'Executa as verificações de referência (oráculos) do motor numérico'

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--frames', type=int, default=1000, help='Quadros aleatórios por ordem r no oráculo')

    def handle(self, *args, **options):
        outcomes = run_selftest(seed=options['seed'], frames=options['frames'])
        failed = [o for o in outcomes if not o.passed]
        for outcome in outcomes:
            if outcome.passed:
                self.stdout.write(self.style.SUCCESS(f'PASS  {outcome.name}: {outcome.detail}'))
            else:
                self.stdout.write(self.style.ERROR(f'FAIL  {outcome.name}: {outcome.detail}'))
        if failed:
            raise CommandError(f'{len(failed)} de {len(outcomes)} verificações falharam')
        self.stdout.write(self.style.SUCCESS(f'✅ {len(outcomes)} verificações aprovadas'))
