# pldpc/datafiles.py

from pathlib import Path

from django.conf import settings

from .coding.exceptions import PldpcError
from .coding.quantization import PROFILES

BUILTIN_ARITHMETIC = ('float', 'float-maxlog')


class DataFileError(PldpcError):
    """Arquivo de descrição ou de perfil fora de PLDPC['CODE_DIR'] ou inexistente."""


def code_dir():
    return Path(settings.PLDPC['CODE_DIR']).resolve()


def resolve_data_file(value):
    """Caminho absoluto dentro de CODE_DIR; caminhos relativos partem de CODE_DIR."""
    root = code_dir()
    path = (root / value).resolve()
    try:
        path.relative_to(root)
    except ValueError:
        raise DataFileError(f'Arquivo fora do diretório de códigos: {value}') from None
    if not path.is_file():
        raise DataFileError(f'Arquivo não encontrado: {value}')
    return str(path)


def resolve_quant(value):
    """Nomes de aritmética passam direto; o resto é um arquivo de perfil em CODE_DIR."""
    if value in BUILTIN_ARITHMETIC or value in PROFILES:
        return value
    return resolve_data_file(value)
