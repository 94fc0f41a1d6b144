#!/usr/bin/env python
"""
Script para configurar o banco de dados inicial
"""
import os
import sys
import django
from pathlib import Path

# Adicionar o diretório do projeto ao path
BASE_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(BASE_DIR))

# Configurar o Django
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'pldpc_project.settings')
django.setup()

from django.core.management import execute_from_command_line
from django.contrib.auth import get_user_model
from pldpc.models import ArchitectureConfig, TimingReport
from pldpc.services import evaluate_architecture


def main():
    """Executa a configuração inicial do banco de dados"""
    print("🚀 Iniciando configuração do banco de dados...")

    # Aplicar migrações
    print("🔄 Aplicando migrações...")
    execute_from_command_line(['manage.py', 'migrate'])

    # Carregar as configurações de arquitetura de referência
    print("📊 Carregando dados iniciais...")
    execute_from_command_line(['manage.py', 'loaddata', str(BASE_DIR / 'pldpc' / 'fixtures' / 'initial_data.json')])

    # Avaliar o modelo de timing das configurações ainda sem relatório
    for architecture in ArchitectureConfig.objects.filter(timing_reports__isnull=True):
        report = evaluate_architecture(architecture)
        print(f"⏱️  {architecture.name}: {report.latency_ms:.3f} ms, {report.throughput_gbps:.2f} Gbps")

    User = get_user_model()
    print("✅ Configuração do banco de dados concluída!")
    print("\n📋 Resumo:")
    print(f"   • Arquiteturas: {ArchitectureConfig.objects.count()} registros")
    print(f"   • Relatórios de timing: {TimingReport.objects.count()} registros")
    print(f"   • Usuários: {User.objects.count()} registros")
    if not User.objects.filter(is_superuser=True).exists():
        print("\nℹ️  Nenhum superusuário: crie um com 'python manage.py createsuperuser'")
    print("\n🌐 Para acessar o sistema:")
    print("   Admin: http://localhost:8000/admin/")
    print("   API: http://localhost:8000/api/")


if __name__ == '__main__':
    main()
