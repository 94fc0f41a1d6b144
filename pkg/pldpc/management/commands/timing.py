from django.core.management.base import BaseCommand, CommandError

from pldpc import services
from pldpc.coding.exceptions import PldpcError
from pldpc.coding.timing import ArchConfig, write_timing_csv, write_trace_csv
from pldpc.serializers import TimingRequestSerializer


class Command(BaseCommand):
    help = 'Latência, vazão e escalonamento ciclo a ciclo da arquitetura do decodificador'

    def add_arguments(self, parser):
        parser.add_argument('--code-file', default='', help='Arquivo de descrição do código')
        parser.add_argument('--z1', type=int, default=32)
        parser.add_argument('--z2', type=int, default=512)
        parser.add_argument('--nh', type=int, nargs='+', required=True, help='Um ou mais valores de N_h')
        parser.add_argument('--fc', type=float, default=130e6, help='Frequência de clock (Hz)')
        parser.add_argument('--iters', type=int, nargs='+', default=[20])
        parser.add_argument('--tdelta', type=int, default=2, help='Atraso de RAM por camada (ciclos)')
        parser.add_argument('--trace', default='', help='Grava o trace ciclo a ciclo da camada --layer neste CSV')
        parser.add_argument('--layer', type=int, default=0)
        parser.add_argument('--out', default='', help='Arquivo CSV de saída (padrão: stdout)')
        parser.add_argument('--xlsx', default='', help='Também grava a tabela como planilha')

    def handle(self, *args, **options):
        serializer = TimingRequestSerializer(data={
            'code_file': options['code_file'],
            'z1': options['z1'],
            'z2': options['z2'],
            'nh': options['nh'],
            'fc': options['fc'],
            'iterations': options['iters'],
            'tdelta': options['tdelta'],
            'layer': options['layer'],
        })
        if not serializer.is_valid():
            raise CommandError(f'Parâmetros inválidos: {dict(serializer.errors)}')
        data = serializer.validated_data

        summaries = []
        try:
            code = services.timing_code(data['z1'], data['z2'], data['code_file'], data['m'], data['n'], data['r'])
            for nh in data['nh']:
                for iterations in data['iterations']:
                    arch = ArchConfig(code.z2, nh, data['fc'], iterations, data['tdelta'])
                    summaries.append(services.timing_summary(code, arch, f'Nh{nh}-I{iterations}', data['layer']))
        except PldpcError as exc:
            raise CommandError(str(exc))

        rows = [summary['row'] for summary in summaries]
        if options['out']:
            with open(options['out'], 'w', newline='') as stream:
                write_timing_csv(stream, rows)
            self.stdout.write(self.style.SUCCESS(f"✅ Tabela de timing gravada em {options['out']}"))
        else:
            write_timing_csv(self.stdout, rows)

        if options['xlsx']:
            services.timing_workbook(summaries).save(options['xlsx'])
            self.stdout.write(self.style.SUCCESS(f"✅ Planilha gravada em {options['xlsx']}"))

        if options['trace']:
            report = summaries[0]['report']
            with open(options['trace'], 'w', newline='') as stream:
                write_trace_csv(stream, report)
            self.stdout.write(self.style.SUCCESS(
                f"✅ Trace da camada {data['layer']} ({report.total_cycles} ciclos) gravado em {options['trace']}"
            ))
            if report.synthetic_layer:
                self.stdout.write(self.style.WARNING(
                    '⚠️  Sem o código completo: colunas e deslocamentos da camada são sintéticos'
                ))

        for summary in summaries:
            if summary['conflicts']:
                self.stdout.write(self.style.WARNING(
                    f"⚠️  {summary['name']}: {summary['conflicts']} conflitos de porta no escalonamento"
                ))
