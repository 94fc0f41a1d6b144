from django.apps import AppConfig


class PldpcConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pldpc'
    verbose_name = 'Decodificador PLDPC-Hadamard'
