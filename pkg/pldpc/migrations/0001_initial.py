# Generated by Django 4.2.7 on 2026-10-19 09:00

import django.core.validators
import django.db.models.deletion
from django.conf import settings
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
        migrations.swappable_dependency(settings.AUTH_USER_MODEL),
    ]

    operations = [
        migrations.CreateModel(
            name='ArchitectureConfig',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=100, unique=True, verbose_name='Nome')),
                ('descricao', models.TextField(blank=True, verbose_name='Descrição')),
                ('m', models.PositiveIntegerField(default=7, verbose_name='Linhas da matriz base (m)')),
                ('n', models.PositiveIntegerField(default=11, verbose_name='Colunas da matriz base (n)')),
                ('r', models.PositiveIntegerField(default=4, verbose_name='Ordem Hadamard (r)')),
                ('z1', models.PositiveIntegerField(default=32, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Fator de lifting z1')),
                ('z2', models.PositiveIntegerField(default=512, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Fator de lifting z2')),
                ('code_seed', models.IntegerField(default=0, verbose_name='Semente da construção')),
                ('n_h', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(1)], verbose_name='Sub-decodificadores (N_h)')),
                ('f_c', models.FloatField(default=130000000.0, validators=[django.core.validators.MinValueValidator(1.0)], verbose_name='Frequência de clock (Hz)')),
                ('iterations', models.PositiveIntegerField(default=20, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Iterações (I)')),
                ('t_delta', models.PositiveIntegerField(default=2, verbose_name='Atraso de RAM (t_δ, ciclos)')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Criado em')),
                ('updated_at', models.DateTimeField(auto_now=True, verbose_name='Atualizado em')),
            ],
            options={
                'verbose_name': 'Configuração de Arquitetura',
                'verbose_name_plural': 'Configurações de Arquitetura',
                'db_table': 'architecture_config',
                'ordering': ['name'],
            },
        ),
        migrations.CreateModel(
            name='Campaign',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=100, verbose_name='Nome')),
                ('code_file', models.CharField(blank=True, max_length=255, verbose_name='Arquivo de descrição do código')),
                ('z1', models.PositiveIntegerField(default=4, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Fator de lifting z1')),
                ('z2', models.PositiveIntegerField(default=16, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Fator de lifting z2')),
                ('code_seed', models.IntegerField(default=0, verbose_name='Semente da construção')),
                ('iterations', models.PositiveIntegerField(default=20, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Iterações (I)')),
                ('ebn0_list', models.JSONField(default=list, verbose_name='Lista de Eb/N0 (dB)')),
                ('max_frames', models.PositiveIntegerField(default=1000, verbose_name='Máximo de quadros')),
                ('target_frame_errors', models.PositiveIntegerField(default=100, validators=[django.core.validators.MinValueValidator(1)], verbose_name='Erros de quadro alvo')),
                ('seed', models.IntegerField(default=0, verbose_name='Semente mestre')),
                ('quant', models.CharField(default='float', help_text='float, float-maxlog, S1, S2, S3 ou caminho de um arquivo de perfil', max_length=255, verbose_name='Quantização')),
                ('all_zero', models.BooleanField(default=False, verbose_name='Palavra-código toda zero')),
                ('early_stop', models.BooleanField(default=False, verbose_name='Parada antecipada por síndrome')),
                ('status', models.CharField(choices=[('pending', 'Pendente'), ('running', 'Em execução'), ('done', 'Concluída'), ('failed', 'Falhou')], default='pending', max_length=10, verbose_name='Status')),
                ('error_message', models.TextField(blank=True, verbose_name='Mensagem de erro')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Criado em')),
                ('updated_at', models.DateTimeField(auto_now=True, verbose_name='Atualizado em')),
                ('created_by', models.ForeignKey(blank=True, null=True, on_delete=django.db.models.deletion.SET_NULL, related_name='campaigns', to=settings.AUTH_USER_MODEL, verbose_name='Criado por')),
            ],
            options={
                'verbose_name': 'Campanha',
                'verbose_name_plural': 'Campanhas',
                'db_table': 'campaign',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='TimingReport',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('case', models.CharField(choices=[('I', 'Caso I'), ('II', 'Caso II')], max_length=2, verbose_name='Caso')),
                ('groups', models.PositiveIntegerField(verbose_name='Grupos por camada (G)')),
                ('cycles_per_layer', models.PositiveIntegerField(verbose_name='Ciclos por camada')),
                ('latency_s', models.FloatField(verbose_name='Latência (s)')),
                ('throughput_bps', models.FloatField(verbose_name='Vazão (bit/s)')),
                ('codeword_length', models.PositiveIntegerField(verbose_name='Comprimento da palavra-código')),
                ('fifo_peak', models.PositiveIntegerField(default=0, verbose_name='Ocupação máxima do FIFO')),
                ('conflicts', models.PositiveIntegerField(default=0, verbose_name='Conflitos de porta')),
                ('created_at', models.DateTimeField(auto_now_add=True, verbose_name='Criado em')),
                ('architecture', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='timing_reports', to='pldpc.architectureconfig', verbose_name='Arquitetura')),
            ],
            options={
                'verbose_name': 'Relatório de Timing',
                'verbose_name_plural': 'Relatórios de Timing',
                'db_table': 'timing_report',
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='CampaignPoint',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('ebn0_db', models.FloatField(verbose_name='Eb/N0 (dB)')),
                ('frames', models.PositiveIntegerField(default=0, verbose_name='Quadros')),
                ('bit_errors', models.PositiveIntegerField(default=0, verbose_name='Erros de bit')),
                ('frame_errors', models.PositiveIntegerField(default=0, verbose_name='Erros de quadro')),
                ('info_bits', models.PositiveIntegerField(default=0, verbose_name='Bits de informação por quadro')),
                ('iterations', models.PositiveIntegerField(default=0, verbose_name='Iterações')),
                ('quant_setting', models.CharField(default='float', max_length=100, verbose_name='Quantização')),
                ('elapsed', models.FloatField(default=0.0, verbose_name='Tempo decorrido (s)')),
                ('campaign', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='points', to='pldpc.campaign', verbose_name='Campanha')),
            ],
            options={
                'verbose_name': 'Ponto da Campanha',
                'verbose_name_plural': 'Pontos da Campanha',
                'db_table': 'campaign_point',
                'ordering': ['campaign', 'ebn0_db'],
                'unique_together': {('campaign', 'ebn0_db')},
            },
        ),
    ]
