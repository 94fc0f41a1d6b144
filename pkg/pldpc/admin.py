from django.contrib import admin

from .models import ArchitectureConfig, TimingReport, Campaign, CampaignPoint


@admin.register(ArchitectureConfig)
class ArchitectureConfigAdmin(admin.ModelAdmin):
    """Admin para configurações de arquitetura"""
    list_display = ('name', 'n_h', 'groups', 'iterations', 'z1', 'z2', 'r', 'f_c')
    list_filter = ('n_h', 'iterations')
    search_fields = ('name', 'descricao')
    ordering = ('name',)
    readonly_fields = ('created_at', 'updated_at')

    fieldsets = (
        (None, {
            'fields': ('name', 'descricao')
        }),
        ('Código', {
            'fields': ('m', 'n', 'r', 'z1', 'z2', 'code_seed')
        }),
        ('Hardware', {
            'fields': ('n_h', 'f_c', 'iterations', 't_delta')
        }),
        ('Controle', {
            'fields': ('created_at', 'updated_at')
        }),
    )


@admin.register(TimingReport)
class TimingReportAdmin(admin.ModelAdmin):
    list_display = ('architecture', 'case', 'groups', 'cycles_per_layer', 'latency_ms', 'throughput_gbps', 'created_at')
    list_filter = ('case', 'created_at')
    search_fields = ('architecture__name',)
    ordering = ('-created_at',)
    readonly_fields = ('created_at',)


class CampaignPointInline(admin.TabularInline):
    model = CampaignPoint
    extra = 0
    readonly_fields = ('ebn0_db', 'frames', 'bit_errors', 'frame_errors', 'info_bits', 'iterations',
                       'quant_setting', 'elapsed')
    can_delete = False


@admin.register(Campaign)
class CampaignAdmin(admin.ModelAdmin):
    list_display = ('name', 'z1', 'z2', 'quant', 'iterations', 'status', 'created_by', 'created_at')
    list_filter = ('status', 'quant', 'all_zero', 'created_at')
    search_fields = ('name', 'code_file')
    ordering = ('-created_at',)
    readonly_fields = ('status', 'error_message', 'created_at', 'updated_at')
    inlines = [CampaignPointInline]

    fieldsets = (
        ('Código', {
            'fields': ('name', 'code_file', 'z1', 'z2', 'code_seed')
        }),
        ('Simulação', {
            'fields': ('ebn0_list', 'iterations', 'max_frames', 'target_frame_errors', 'seed',
                       'quant', 'all_zero', 'early_stop')
        }),
        ('Controle', {
            'fields': ('status', 'error_message', 'created_by', 'created_at', 'updated_at')
        }),
    )


@admin.register(CampaignPoint)
class CampaignPointAdmin(admin.ModelAdmin):
    list_display = ('campaign', 'ebn0_db', 'frames', 'frame_errors', 'ber', 'fer', 'quant_setting')
    list_filter = ('quant_setting',)
    search_fields = ('campaign__name',)
