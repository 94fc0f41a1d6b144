# pldpc/services.py

import logging
from functools import lru_cache

from django.conf import settings
from openpyxl import Workbook
from openpyxl.styles import Font

from .coding.campaign import CampaignConfig, run_campaign
from .coding.construction import DEFAULT_BASE_MATRIX, default_code, load_code_description
from .coding.timing import (
    ArchConfig, CodeDimensions, TIMING_HEADER, evaluate_timing, potential_multi_codeword_throughput,
    simulate_schedule, timing_row,
)
from .datafiles import resolve_data_file, resolve_quant
from .models import CampaignPoint, TimingReport

logger = logging.getLogger(__name__)

DEFAULT_M, DEFAULT_N = len(DEFAULT_BASE_MATRIX), len(DEFAULT_BASE_MATRIX[0])
DEFAULT_R = sum(DEFAULT_BASE_MATRIX[0]) - 2
DEFAULT_MAX_ENTRY = max(max(row) for row in DEFAULT_BASE_MATRIX)


def build_code(z1, z2, code_seed=0, code_file=''):
    """Código do arquivo de descrição (dentro de CODE_DIR), ou o código da matriz base padrão."""
    if code_file:
        return _load_code(resolve_data_file(code_file))
    return _default_code(z1, z2, code_seed)


@lru_cache(maxsize=8)
def _load_code(path):
    return load_code_description(path)


@lru_cache(maxsize=8)
def _default_code(z1, z2, code_seed):
    return default_code(z1, z2, seed=code_seed)


def code_for_request(data):
    seed = data.get('code_seed')
    if seed is None:
        seed = settings.PLDPC['CODE_SEED']
    return build_code(data['z1'], data['z2'], seed, data.get('code_file') or '')


def timing_code(z1, z2, code_file='', m=DEFAULT_M, n=DEFAULT_N, r=DEFAULT_R, code_seed=None):
    """Código para o modelo de timing.

    Arquivo de descrição ou matriz base padrão: o código completo, e o trace
    segue as colunas e deslocamentos CPM reais da camada. Outras dimensões só
    têm fórmula fechada, e o trace usa uma camada sintética.
    """
    if code_file:
        return build_code(z1, z2, code_file=code_file)
    if (m, n, r) == (DEFAULT_M, DEFAULT_N, DEFAULT_R) and z1 >= DEFAULT_MAX_ENTRY:
        return build_code(z1, z2, settings.PLDPC['CODE_SEED'] if code_seed is None else code_seed)
    return CodeDimensions(m, n, z1, z2, r)


def architecture_code(architecture):
    return timing_code(architecture.z1, architecture.z2, m=architecture.m, n=architecture.n,
                       r=architecture.r, code_seed=architecture.code_seed)


def arch_config(architecture):
    return ArchConfig(
        z2=architecture.z2,
        N_h=architecture.n_h,
        f_c=architecture.f_c,
        iterations=architecture.iterations,
        t_delta=architecture.t_delta,
    )


def timing_summary(code, arch, name='', layer=0):
    """Figuras de latência/vazão mais a reprodução ciclo a ciclo de uma camada."""
    figures = evaluate_timing(code, arch)
    report = simulate_schedule(code, arch, k=layer)
    return {
        'name': name,
        'n_h': arch.N_h,
        'groups': figures.G,
        'case': str(figures.case),
        'cycles_per_layer': figures.layer_cycles,
        'simulated_cycles': report.total_cycles,
        'iterations': arch.iterations,
        'latency_ms': figures.latency_ms,
        'throughput_gbps': figures.throughput_gbps,
        'multi_codeword_throughput_gbps': potential_multi_codeword_throughput(code, arch) / 1e9,
        'codeword_length': figures.codeword_length,
        'fifo_peak': report.fifo_peak,
        'conflicts': len(report.conflicts),
        'row': timing_row(name, arch, figures),
        'figures': figures,
        'report': report,
    }


def evaluate_architecture(architecture):
    """Executa o modelo de timing e grava um TimingReport"""
    summary = timing_summary(architecture_code(architecture), arch_config(architecture), architecture.name)
    figures = summary['figures']
    report = TimingReport.objects.create(
        architecture=architecture,
        case=str(figures.case),
        groups=figures.G,
        cycles_per_layer=figures.layer_cycles,
        latency_s=figures.latency,
        throughput_bps=figures.throughput,
        codeword_length=figures.codeword_length,
        fifo_peak=summary['fifo_peak'],
        conflicts=summary['conflicts'],
    )
    logger.info('%s: Case %s, %d cycles/layer, %.3f ms, %.2f Gbps',
                architecture.name, report.case, report.cycles_per_layer, report.latency_ms, report.throughput_gbps)
    return report


def timing_workbook(summaries):
    """Planilha openpyxl com uma linha por configuração"""
    workbook = Workbook()
    sheet = workbook.active
    sheet.title = 'timing'
    sheet.append(list(TIMING_HEADER) + ['fifo_peak', 'conflicts'])
    for cell in sheet[1]:
        cell.font = Font(bold=True)
    for summary in summaries:
        figures = summary['figures']
        sheet.append([
            summary['name'], summary['n_h'], figures.G, str(figures.case), figures.layer_cycles,
            summary['iterations'], round(figures.latency_ms, 4), round(figures.throughput_gbps, 3),
            summary['fifo_peak'], summary['conflicts'],
        ])
    return workbook


def campaign_config(code, data):
    """CampaignConfig a partir dos dados validados por SimulationRequestSerializer"""
    defaults = settings.PLDPC
    return CampaignConfig(
        code=code,
        ebn0_list=data['ebn0_list'],
        iterations=data.get('iterations', 20),
        max_frames=data.get('max_frames', 1000),
        target_frame_errors=data.get('target_frame_errors', 100),
        seed=data.get('seed', 0),
        quant=resolve_quant(data.get('quant', 'float')),
        all_zero=data.get('all_zero', False),
        early_stop=data.get('early_stop', False),
        workers=data.get('workers') or defaults['WORKERS'],
        batch_size=data.get('batch_size') or defaults['BATCH_SIZE'],
        max_dense_entries=defaults['MAX_DENSE_ENTRIES'],
        lut_limit=defaults['MAX_STAR_LUT_LIMIT'],
    )


def run_stored_campaign(campaign):
    """Executa uma Campaign gravada e substitui seus pontos"""
    campaign.status = 'running'
    campaign.error_message = ''
    campaign.save(update_fields=['status', 'error_message', 'updated_at'])
    try:
        code = build_code(campaign.z1, campaign.z2, campaign.code_seed, campaign.code_file)
        config = campaign_config(code, {
            'ebn0_list': campaign.ebn0_list,
            'iterations': campaign.iterations,
            'max_frames': campaign.max_frames,
            'target_frame_errors': campaign.target_frame_errors,
            'seed': campaign.seed,
            'quant': campaign.quant,
            'all_zero': campaign.all_zero,
            'early_stop': campaign.early_stop,
        })
        result = run_campaign(config)
    except Exception as exc:
        campaign.status = 'failed'
        campaign.error_message = str(exc) or type(exc).__name__
        campaign.save(update_fields=['status', 'error_message', 'updated_at'])
        logger.warning('campaign %s failed: %s', campaign.pk, exc)
        raise
    campaign.points.all().delete()
    CampaignPoint.objects.bulk_create([
        CampaignPoint(
            campaign=campaign,
            ebn0_db=point.ebn0_db,
            frames=point.frames,
            bit_errors=point.bit_errors,
            frame_errors=point.frame_errors,
            info_bits=point.info_bits,
            iterations=point.iterations,
            quant_setting=point.quant_setting,
            elapsed=point.elapsed,
        )
        for point in result.points
    ])
    campaign.status = 'done'
    campaign.save(update_fields=['status', 'updated_at'])
    return result
