from rest_framework import serializers
from django.core.exceptions import ValidationError as DjangoValidationError

from .coding.arithmetic import arithmetic_for
from .coding.exceptions import PldpcError
from .datafiles import DataFileError, resolve_data_file, resolve_quant
from .models import ArchitectureConfig, TimingReport, Campaign, CampaignPoint


def _validate_quant(value):
    try:
        value = resolve_quant(value)
        arithmetic_for(value)
    except PldpcError as exc:
        raise serializers.ValidationError(str(exc))
    return value


def _validate_code_file(value):
    if not value:
        return value
    try:
        return resolve_data_file(value)
    except DataFileError as exc:
        raise serializers.ValidationError(str(exc))


class ArchitectureConfigSerializer(serializers.ModelSerializer):
    """Serializer para configurações de arquitetura"""
    groups = serializers.IntegerField(read_only=True)

    class Meta:
        model = ArchitectureConfig
        fields = [
            'id', 'name', 'descricao', 'm', 'n', 'r', 'z1', 'z2', 'code_seed',
            'n_h', 'groups', 'f_c', 'iterations', 't_delta',
            'created_at', 'updated_at'
        ]
        read_only_fields = ['created_at', 'updated_at']

    def validate(self, data):
        instance = ArchitectureConfig(**{**self._current_values(), **data})
        try:
            instance.clean()
        except DjangoValidationError as exc:
            raise serializers.ValidationError(exc.message_dict)
        return data

    def _current_values(self):
        if self.instance is None:
            return {}
        names = [f for f in self.Meta.fields if f not in ('id', 'groups', 'created_at', 'updated_at')]
        return {name: getattr(self.instance, name) for name in names}


class TimingReportSerializer(serializers.ModelSerializer):
    """Serializer para relatórios de timing"""
    architecture_name = serializers.CharField(source='architecture.name', read_only=True)
    latency_ms = serializers.FloatField(read_only=True)
    throughput_gbps = serializers.FloatField(read_only=True)

    class Meta:
        model = TimingReport
        fields = [
            'id', 'architecture', 'architecture_name', 'case', 'groups', 'cycles_per_layer',
            'latency_s', 'latency_ms', 'throughput_bps', 'throughput_gbps',
            'codeword_length', 'fifo_peak', 'conflicts', 'created_at'
        ]
        read_only_fields = fields


class CampaignPointSerializer(serializers.ModelSerializer):
    """Serializer para pontos de campanha"""
    ber = serializers.FloatField(read_only=True)
    fer = serializers.FloatField(read_only=True)

    class Meta:
        model = CampaignPoint
        fields = [
            'id', 'campaign', 'ebn0_db', 'frames', 'bit_errors', 'frame_errors',
            'info_bits', 'ber', 'fer', 'iterations', 'quant_setting', 'elapsed'
        ]
        read_only_fields = fields


class CampaignSerializer(serializers.ModelSerializer):
    """Serializer para campanhas de simulação"""
    points = CampaignPointSerializer(many=True, read_only=True)
    created_by_name = serializers.CharField(source='created_by.username', read_only=True, default=None)

    class Meta:
        model = Campaign
        fields = [
            'id', 'name', 'code_file', 'z1', 'z2', 'code_seed', 'iterations', 'ebn0_list',
            'max_frames', 'target_frame_errors', 'seed', 'quant', 'all_zero', 'early_stop',
            'status', 'error_message', 'created_by', 'created_by_name', 'points',
            'created_at', 'updated_at'
        ]
        read_only_fields = ['status', 'error_message', 'created_by', 'created_at', 'updated_at']

    def validate_quant(self, value):
        return _validate_quant(value)

    def validate_code_file(self, value):
        return _validate_code_file(value)

    def validate_ebn0_list(self, value):
        if not isinstance(value, list) or not value:
            raise serializers.ValidationError('Informe ao menos um valor de Eb/N0.')
        try:
            return [float(v) for v in value]
        except (TypeError, ValueError):
            raise serializers.ValidationError('Os valores de Eb/N0 devem ser numéricos.')


class SimulationRequestSerializer(serializers.Serializer):
    """Parâmetros de uma simulação (comando simulate e API)"""
    code_file = serializers.CharField(required=False, allow_blank=True, default='')
    z1 = serializers.IntegerField(min_value=1, default=4)
    z2 = serializers.IntegerField(min_value=1, default=16)
    code_seed = serializers.IntegerField(required=False, allow_null=True, default=None)
    nh = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    iterations = serializers.IntegerField(min_value=1, default=20)
    ebn0_list = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    max_frames = serializers.IntegerField(min_value=0, default=1000)
    target_frame_errors = serializers.IntegerField(min_value=1, default=100)
    seed = serializers.IntegerField(default=0)
    quant = serializers.CharField(default='float')
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    batch_size = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    all_zero = serializers.BooleanField(default=False)
    early_stop = serializers.BooleanField(default=False)

    def validate_quant(self, value):
        return _validate_quant(value)

    def validate_code_file(self, value):
        return _validate_code_file(value)

    def validate(self, data):
        nh = data.get('nh')
        if nh and not data.get('code_file') and data['z2'] % nh:
            raise serializers.ValidationError({'nh': f"z2={data['z2']} deve ser múltiplo de N_h={nh}."})
        return data


class TimingRequestSerializer(serializers.Serializer):
    """Parâmetros do modelo de timing (comando timing e API)"""
    code_file = serializers.CharField(required=False, allow_blank=True, default='')
    m = serializers.IntegerField(min_value=1, default=7)
    n = serializers.IntegerField(min_value=1, default=11)
    r = serializers.IntegerField(min_value=2, default=4)
    z1 = serializers.IntegerField(min_value=1, default=32)
    z2 = serializers.IntegerField(min_value=1, default=512)
    nh = serializers.ListField(child=serializers.IntegerField(min_value=1), allow_empty=False)
    fc = serializers.FloatField(min_value=1.0, default=130e6)
    iterations = serializers.ListField(child=serializers.IntegerField(min_value=1), default=[20])
    tdelta = serializers.IntegerField(min_value=0, default=2)
    layer = serializers.IntegerField(min_value=0, default=0)

    def validate_code_file(self, value):
        return _validate_code_file(value)

    def validate(self, data):
        if data['r'] % 2:
            raise serializers.ValidationError({'r': 'A ordem Hadamard r deve ser par.'})
        if not data.get('code_file'):
            bad = [nh for nh in data['nh'] if nh > data['z2'] or data['z2'] % nh]
            if bad:
                raise serializers.ValidationError({'nh': f"z2={data['z2']} não é múltiplo de N_h={bad[0]}."})
        return data
