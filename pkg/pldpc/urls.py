from django.urls import path, include
from rest_framework.routers import DefaultRouter
from rest_framework_simplejwt.views import TokenObtainPairView, TokenRefreshView

from .views import (
    ArchitectureConfigViewSet, TimingReportViewSet, CampaignViewSet, SimulationViewSet
)

# Configuração do router para as APIs
router = DefaultRouter()
router.register(r'architectures', ArchitectureConfigViewSet)
router.register(r'timing-reports', TimingReportViewSet)
router.register(r'campaigns', CampaignViewSet)
router.register(r'simulation', SimulationViewSet, basename='simulation')

urlpatterns = [
    # Endpoints das APIs
    path('', include(router.urls)),

    # JWT Token endpoints
    path('token/', TokenObtainPairView.as_view(), name='token_obtain_pair'),
    path('token/refresh/', TokenRefreshView.as_view(), name='token_refresh'),
]
