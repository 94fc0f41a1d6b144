"""Numerical engine: code construction, Hadamard kernel, layered decoding,
fixed-point arithmetic, the memory/timing model and Monte Carlo campaigns.

Nothing in this package imports Django.
"""
from .arithmetic import FLOAT, FixedPointArithmetic, FloatArithmetic, arithmetic_for, max_star
from .campaign import CampaignConfig, CampaignResult, TrialResult, run_campaign, wilson_interval
from .channel import ChannelConfig, modulate_and_transmit
from .construction import (
    DEFAULT_BASE_MATRIX, BaseMatrix, LayerView, LiftedCode, build_code, code_rate, default_code, layer_view,
    lift_stage1, lift_stage2, load_code_description, save_code_description,
)
from .decoder import DecodeResult, DecoderState, LayeredDecoder, decode
from .encoder import Codeword, Encoder, encode_frame
from .exceptions import (
    ArchitectureError, CampaignConfigError, CodeConstructionError, CodeDescriptionError, DecoderError,
    EncoderSetupError, HadamardError, PldpcError, QuantizationError, ScheduleConflictError,
)
from .hadamard import (
    HadamardContext, HadamardLLRFrame, dfht, fht, hadamard_encode, hadamard_matrix, spc_positions,
    symbol_map_decode,
)
from .quantization import PROFILES, S1, S2, S3, QFormat, QuantSetting, get_setting, quantize
from .timing import (
    ArchConfig, Case, CodeDimensions, classify_case, codeword_latency_and_throughput, evaluate_timing,
    layer_latency, simulate_schedule,
)
