from django.conf import settings
from django.db import models
from django.core.validators import MinValueValidator
from django.core.exceptions import ValidationError

from .coding.construction import DEFAULT_BASE_MATRIX
from .datafiles import DataFileError, resolve_data_file, resolve_quant


class ArchitectureConfig(models.Model):
    """Configuração de arquitetura do decodificador (uma linha do relatório de timing)"""
    name = models.CharField(max_length=100, unique=True, verbose_name='Nome')
    descricao = models.TextField(blank=True, verbose_name='Descrição')

    m = models.PositiveIntegerField(default=len(DEFAULT_BASE_MATRIX), verbose_name='Linhas da matriz base (m)')
    n = models.PositiveIntegerField(default=len(DEFAULT_BASE_MATRIX[0]), verbose_name='Colunas da matriz base (n)')
    r = models.PositiveIntegerField(default=4, verbose_name='Ordem Hadamard (r)')
    z1 = models.PositiveIntegerField(default=32, validators=[MinValueValidator(1)], verbose_name='Fator de lifting z1')
    z2 = models.PositiveIntegerField(default=512, validators=[MinValueValidator(1)], verbose_name='Fator de lifting z2')
    code_seed = models.IntegerField(default=0, verbose_name='Semente da construção')

    n_h = models.PositiveIntegerField(validators=[MinValueValidator(1)], verbose_name='Sub-decodificadores (N_h)')
    f_c = models.FloatField(default=130e6, validators=[MinValueValidator(1.0)], verbose_name='Frequência de clock (Hz)')
    iterations = models.PositiveIntegerField(default=20, validators=[MinValueValidator(1)], verbose_name='Iterações (I)')
    t_delta = models.PositiveIntegerField(default=2, verbose_name='Atraso de RAM (t_δ, ciclos)')

    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Criado em')
    updated_at = models.DateTimeField(auto_now=True, verbose_name='Atualizado em')

    class Meta:
        verbose_name = 'Configuração de Arquitetura'
        verbose_name_plural = 'Configurações de Arquitetura'
        db_table = 'architecture_config'
        ordering = ['name']

    def __str__(self):
        return f"{self.name} (N_h={self.n_h}, I={self.iterations})"

    @property
    def groups(self):
        return self.z2 // self.n_h if self.n_h else None

    def clean(self):
        super().clean()
        if self.r % 2 or self.r < 2:
            raise ValidationError({'r': 'A ordem Hadamard r deve ser par e maior ou igual a 2.'})
        if self.n < self.m:
            raise ValidationError({'n': 'n deve ser maior ou igual a m.'})
        if self.n_h and self.n_h > self.z2:
            raise ValidationError({'n_h': 'N_h não pode ser maior que z2.'})
        if self.n_h and self.z2 % self.n_h:
            raise ValidationError({'n_h': f'z2={self.z2} deve ser múltiplo de N_h={self.n_h} (G inteiro).'})


class TimingReport(models.Model):
    """Resultado do modelo de timing para uma configuração"""
    CASE_CHOICES = [
        ('I', 'Caso I'),
        ('II', 'Caso II'),
    ]

    architecture = models.ForeignKey(
        ArchitectureConfig,
        on_delete=models.CASCADE,
        related_name='timing_reports',
        verbose_name='Arquitetura'
    )
    case = models.CharField(max_length=2, choices=CASE_CHOICES, verbose_name='Caso')
    groups = models.PositiveIntegerField(verbose_name='Grupos por camada (G)')
    cycles_per_layer = models.PositiveIntegerField(verbose_name='Ciclos por camada')
    latency_s = models.FloatField(verbose_name='Latência (s)')
    throughput_bps = models.FloatField(verbose_name='Vazão (bit/s)')
    codeword_length = models.PositiveIntegerField(verbose_name='Comprimento da palavra-código')
    fifo_peak = models.PositiveIntegerField(default=0, verbose_name='Ocupação máxima do FIFO')
    conflicts = models.PositiveIntegerField(default=0, verbose_name='Conflitos de porta')
    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Criado em')

    class Meta:
        verbose_name = 'Relatório de Timing'
        verbose_name_plural = 'Relatórios de Timing'
        db_table = 'timing_report'
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.architecture.name}: {self.latency_ms:.3f} ms, {self.throughput_gbps:.2f} Gbps"

    @property
    def latency_ms(self):
        return self.latency_s * 1e3

    @property
    def throughput_gbps(self):
        return self.throughput_bps / 1e9


class Campaign(models.Model):
    """Campanha de simulação Monte Carlo (BER/FER x Eb/N0)"""
    STATUS_CHOICES = [
        ('pending', 'Pendente'),
        ('running', 'Em execução'),
        ('done', 'Concluída'),
        ('failed', 'Falhou'),
    ]

    name = models.CharField(max_length=100, verbose_name='Nome')
    code_file = models.CharField(max_length=255, blank=True, verbose_name='Arquivo de descrição do código')
    z1 = models.PositiveIntegerField(default=4, validators=[MinValueValidator(1)], verbose_name='Fator de lifting z1')
    z2 = models.PositiveIntegerField(default=16, validators=[MinValueValidator(1)], verbose_name='Fator de lifting z2')
    code_seed = models.IntegerField(default=0, verbose_name='Semente da construção')
    iterations = models.PositiveIntegerField(default=20, validators=[MinValueValidator(1)], verbose_name='Iterações (I)')
    ebn0_list = models.JSONField(default=list, verbose_name='Lista de Eb/N0 (dB)')
    max_frames = models.PositiveIntegerField(default=1000, verbose_name='Máximo de quadros')
    target_frame_errors = models.PositiveIntegerField(
        default=100, validators=[MinValueValidator(1)], verbose_name='Erros de quadro alvo'
    )
    seed = models.IntegerField(default=0, verbose_name='Semente mestre')
    quant = models.CharField(
        max_length=255,
        default='float',
        verbose_name='Quantização',
        help_text='float, float-maxlog, S1, S2, S3 ou caminho de um arquivo de perfil'
    )
    all_zero = models.BooleanField(default=False, verbose_name='Palavra-código toda zero')
    early_stop = models.BooleanField(default=False, verbose_name='Parada antecipada por síndrome')
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, default='pending', verbose_name='Status')
    error_message = models.TextField(blank=True, verbose_name='Mensagem de erro')
    created_by = models.ForeignKey(
        settings.AUTH_USER_MODEL,
        on_delete=models.SET_NULL,
        null=True,
        blank=True,
        related_name='campaigns',
        verbose_name='Criado por'
    )
    created_at = models.DateTimeField(auto_now_add=True, verbose_name='Criado em')
    updated_at = models.DateTimeField(auto_now=True, verbose_name='Atualizado em')

    class Meta:
        verbose_name = 'Campanha'
        verbose_name_plural = 'Campanhas'
        db_table = 'campaign'
        ordering = ['-created_at']

    def __str__(self):
        return f"{self.name} ({self.get_status_display()})"

    def clean(self):
        super().clean()
        if not isinstance(self.ebn0_list, list) or not self.ebn0_list:
            raise ValidationError({'ebn0_list': 'Informe ao menos um valor de Eb/N0.'})
        try:
            [float(e) for e in self.ebn0_list]
        except (TypeError, ValueError):
            raise ValidationError({'ebn0_list': 'Os valores de Eb/N0 devem ser numéricos.'})
        try:
            resolve_quant(self.quant)
        except DataFileError as exc:
            raise ValidationError({'quant': f'Quantização desconhecida: {exc}'})
        if self.code_file:
            try:
                resolve_data_file(self.code_file)
            except DataFileError as exc:
                raise ValidationError({'code_file': str(exc)})


class CampaignPoint(models.Model):
    """Um ponto Eb/N0 de uma campanha"""
    campaign = models.ForeignKey(
        Campaign,
        on_delete=models.CASCADE,
        related_name='points',
        verbose_name='Campanha'
    )
    ebn0_db = models.FloatField(verbose_name='Eb/N0 (dB)')
    frames = models.PositiveIntegerField(default=0, verbose_name='Quadros')
    bit_errors = models.PositiveIntegerField(default=0, verbose_name='Erros de bit')
    frame_errors = models.PositiveIntegerField(default=0, verbose_name='Erros de quadro')
    info_bits = models.PositiveIntegerField(default=0, verbose_name='Bits de informação por quadro')
    iterations = models.PositiveIntegerField(default=0, verbose_name='Iterações')
    quant_setting = models.CharField(max_length=100, default='float', verbose_name='Quantização')
    elapsed = models.FloatField(default=0.0, verbose_name='Tempo decorrido (s)')

    class Meta:
        verbose_name = 'Ponto da Campanha'
        verbose_name_plural = 'Pontos da Campanha'
        db_table = 'campaign_point'
        ordering = ['campaign', 'ebn0_db']
        unique_together = ['campaign', 'ebn0_db']

    def __str__(self):
        return f"{self.campaign.name} @ {self.ebn0_db} dB"

    @property
    def ber(self):
        return self.bit_errors / (self.frames * self.info_bits) if self.frames and self.info_bits else 0.0

    @property
    def fer(self):
        return self.frame_errors / self.frames if self.frames else 0.0
