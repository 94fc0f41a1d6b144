from rest_framework import viewsets, status, filters
from rest_framework.decorators import action
from rest_framework.response import Response
from rest_framework.permissions import IsAuthenticated, IsAuthenticatedOrReadOnly
from django_filters.rest_framework import DjangoFilterBackend
from django.http import HttpResponse
import csv

from .coding.campaign import CSV_HEADER, run_campaign
from .coding.exceptions import PldpcError
from .coding.timing import TIMING_HEADER, TRACE_HEADER, ArchConfig
from .models import ArchitectureConfig, TimingReport, Campaign
from .serializers import (
    ArchitectureConfigSerializer, TimingReportSerializer, CampaignSerializer,
    SimulationRequestSerializer, TimingRequestSerializer
)
from . import services

XLSX_CONTENT_TYPE = 'application/vnd.openxmlformats-officedocument.spreadsheetml.sheet'


class ArchitectureConfigViewSet(viewsets.ModelViewSet):
    queryset = ArchitectureConfig.objects.prefetch_related('timing_reports')
    serializer_class = ArchitectureConfigSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    filter_backends = [DjangoFilterBackend, filters.SearchFilter, filters.OrderingFilter]
    filterset_fields = ['n_h', 'iterations', 'z1', 'z2', 'r']
    search_fields = ['name', 'descricao']
    ordering_fields = ['name', 'n_h', 'iterations', 'created_at']
    ordering = ['name']

    @action(detail=True, methods=['post'], permission_classes=[IsAuthenticated])
    def evaluate(self, request, pk=None):
        architecture = self.get_object()
        try:
            report = services.evaluate_architecture(architecture)
        except PldpcError as exc:
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(TimingReportSerializer(report).data, status=status.HTTP_201_CREATED)

    @action(detail=True)
    def trace(self, request, pk=None):
        architecture = self.get_object()
        try:
            layer = int(request.query_params.get('layer', 0))
        except ValueError:
            return Response({'error': 'layer deve ser inteiro'}, status=status.HTTP_400_BAD_REQUEST)
        try:
            code = services.architecture_code(architecture)
            summary = services.timing_summary(code, services.arch_config(architecture), architecture.name, layer)
        except PldpcError as exc:
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        report = summary['report']

        if request.query_params.get('csv'):
            response = HttpResponse(content_type='text/csv')
            response['Content-Disposition'] = f'attachment; filename="trace_{architecture.name}.csv"'
            writer = csv.writer(response)
            writer.writerow(TRACE_HEADER)
            writer.writerows(report.rows())
            return response

        return Response({
            'architecture': architecture.name,
            'layer': report.k,
            'synthetic_layer': report.synthetic_layer,
            'group_hcns': [report.group_hcns(g) for g in range(report.G)],
            'case': str(report.case),
            'total_cycles': report.total_cycles,
            'load_complete': report.load_complete,
            'output_ready': report.output_ready,
            'write_start': report.write_start,
            'write_end': report.write_end,
            'fifo_peak': report.fifo_peak,
            'conflicts': report.conflicts,
        })

    @action(detail=False)
    def export_csv(self, request):
        response = HttpResponse(content_type='text/csv')
        response['Content-Disposition'] = 'attachment; filename="timing.csv"'

        writer = csv.writer(response)
        writer.writerow(TIMING_HEADER)
        for architecture in self.filter_queryset(self.get_queryset()):
            code = services.architecture_code(architecture)
            summary = services.timing_summary(code, services.arch_config(architecture), architecture.name)
            writer.writerow(summary['row'])

        return response

    @action(detail=False)
    def export_xlsx(self, request):
        summaries = []
        for architecture in self.filter_queryset(self.get_queryset()):
            code = services.architecture_code(architecture)
            summaries.append(services.timing_summary(code, services.arch_config(architecture), architecture.name))

        response = HttpResponse(content_type=XLSX_CONTENT_TYPE)
        response['Content-Disposition'] = 'attachment; filename="timing.xlsx"'
        services.timing_workbook(summaries).save(response)
        return response


class TimingReportViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = TimingReport.objects.select_related('architecture')
    serializer_class = TimingReportSerializer
    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = ['architecture', 'case']
    ordering_fields = ['created_at', 'latency_s', 'throughput_bps']
    ordering = ['-created_at']


class CampaignViewSet(viewsets.ModelViewSet):
    queryset = Campaign.objects.select_related('created_by').prefetch_related('points')
    serializer_class = CampaignSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    filter_backends = [DjangoFilterBackend, filters.SearchFilter, filters.OrderingFilter]
    filterset_fields = ['status', 'quant', 'all_zero']
    search_fields = ['name']
    ordering_fields = ['created_at', 'name']
    ordering = ['-created_at']

    def perform_create(self, serializer):
        serializer.save(created_by=self.request.user)

    @action(detail=True, methods=['post'], permission_classes=[IsAuthenticated])
    def run(self, request, pk=None):
        campaign = self.get_object()
        if campaign.status == 'running':
            return Response({'error': 'Campanha já está em execução'}, status=status.HTTP_400_BAD_REQUEST)
        try:
            services.run_stored_campaign(campaign)
        except PldpcError as exc:
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        campaign.refresh_from_db()
        return Response(self.get_serializer(campaign).data)

    @action(detail=True)
    def export_csv(self, request, pk=None):
        campaign = self.get_object()
        response = HttpResponse(content_type='text/csv')
        response['Content-Disposition'] = f'attachment; filename="campaign_{campaign.pk}.csv"'

        writer = csv.writer(response, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for point in campaign.points.all():
            writer.writerow([
                f'{point.ebn0_db:g}', point.frames, point.bit_errors, point.frame_errors,
                f'{point.ber:.6e}', f'{point.fer:.6e}', point.iterations, point.quant_setting
            ])

        return response


class SimulationViewSet(viewsets.ViewSet):
    """Execução direta (sem gravar) do modelo de timing e de simulações pequenas"""
    permission_classes = [IsAuthenticatedOrReadOnly]

    @action(detail=False, methods=['post'])
    def timing(self, request):
        serializer = TimingRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        try:
            code = services.timing_code(data['z1'], data['z2'], data['code_file'], data['m'], data['n'], data['r'])
            rows = []
            for nh in data['nh']:
                for iterations in data['iterations']:
                    arch = ArchConfig(code.z2, nh, data['fc'], iterations, data['tdelta'])
                    summary = services.timing_summary(code, arch, f'Nh{nh}-I{iterations}', data['layer'])
                    rows.append({k: v for k, v in summary.items() if k not in ('row', 'figures', 'report')})
        except PldpcError as exc:
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(rows)

    @action(detail=False, methods=['post'], permission_classes=[IsAuthenticated])
    def simulate(self, request):
        serializer = SimulationRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        try:
            code = services.code_for_request(data)
            result = run_campaign(services.campaign_config(code, data))
        except PldpcError as exc:
            return Response({'error': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response([dict(zip(CSV_HEADER, point.csv_row())) for point in result.points])
