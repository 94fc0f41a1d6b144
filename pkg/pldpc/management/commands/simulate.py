
from django.core.management.base import BaseCommand, CommandError

from pldpc import services
from pldpc.coding.campaign import run_campaign
from pldpc.coding.exceptions import PldpcError
from pldpc.coding.timing import ArchConfig
from pldpc.serializers import SimulationRequestSerializer


class Command(BaseCommand):
    help = 'Simulação Monte Carlo BER/FER (BPSK/AWGN) de um código PLDPC-Hadamard'

    def add_arguments(self, parser):
        parser.add_argument('--code-file', default='', help='Arquivo de descrição do código')
        parser.add_argument('--z1', type=int, default=4)
        parser.add_argument('--z2', type=int, default=16)
        parser.add_argument('--code-seed', type=int, default=None, help='Semente da construção (padrão: settings)')
        parser.add_argument('--nh', type=int, default=None,
                            help='Sub-decodificadores; informa latência e vazão dessa arquitetura')
        parser.add_argument('--iters', type=int, default=20)
        parser.add_argument('--ebn0-list', required=True, help='Valores de Eb/N0 em dB separados por vírgula')
        parser.add_argument('--max-frames', type=int, default=1000)
        parser.add_argument('--target-frame-errors', type=int, default=100)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--quant', default='float', help='float, float-maxlog, S1, S2, S3 ou arquivo de perfil')
        parser.add_argument('--out', default='', help='Arquivo CSV de saída (padrão: stdout)')
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--batch-size', type=int, default=None)
        parser.add_argument('--all-zero', action='store_true', help='Transmite sempre a palavra-código toda zero')
        parser.add_argument('--early-stop', action='store_true', help='Para ao satisfazer todas as H-CNs')

    def handle(self, *args, **options):
        try:
            ebn0_list = [float(v) for v in options['ebn0_list'].split(',') if v.strip()]
        except ValueError:
            raise CommandError(f"--ebn0-list inválida: {options['ebn0_list']}")

        serializer = SimulationRequestSerializer(data={
            'code_file': options['code_file'],
            'z1': options['z1'],
            'z2': options['z2'],
            'code_seed': options['code_seed'],
            'nh': options['nh'],
            'iterations': options['iters'],
            'ebn0_list': ebn0_list,
            'max_frames': options['max_frames'],
            'target_frame_errors': options['target_frame_errors'],
            'seed': options['seed'],
            'quant': options['quant'],
            'workers': options['workers'],
            'batch_size': options['batch_size'],
            'all_zero': options['all_zero'],
            'early_stop': options['early_stop'],
        })
        if not serializer.is_valid():
            raise CommandError(f'Parâmetros inválidos: {dict(serializer.errors)}')
        data = serializer.validated_data

        def progress(point):
            low, high = point.ber_interval
            self.stderr.write(
                f'Eb/N0 {point.ebn0_db:g} dB: {point.frames} quadros, BER {point.ber:.3e} '
                f'[{low:.2e}, {high:.2e}], FER {point.fer:.3e}'
            )

        try:
            code = services.code_for_request(data)
            result = run_campaign(services.campaign_config(code, data), progress=progress)
            if data['nh']:
                arch = ArchConfig(code.z2, data['nh'], iterations=data['iterations'])
                summary = services.timing_summary(code, arch, f"Nh{data['nh']}-I{data['iterations']}")
        except PldpcError as exc:
            raise CommandError(str(exc))

        if data['nh']:
            self.stderr.write(
                f"{summary['name']}: N_h={data['nh']}, Caso {summary['case']}, "
                f"{summary['cycles_per_layer']} ciclos/camada, "
                f"{summary['latency_ms']:.4g} ms, {summary['throughput_gbps']:.3g} Gbps"
            )

        if options['out']:
            with open(options['out'], 'w', newline='') as stream:
                result.write_csv(stream)
            self.stdout.write(self.style.SUCCESS(f"✅ {len(result.points)} pontos gravados em {options['out']}"))
        else:
            result.write_csv(self.stdout)
