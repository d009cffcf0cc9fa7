from .fig1a import Fig1aUseCase, get_fig1a_use_case, run_fig1a
from .fig1b import Fig1bUseCase, get_fig1b_use_case, run_fig1b
from .fig2 import Fig2UseCase, get_fig2_use_case, run_fig2
from .fig3 import Fig3UseCase, get_fig3_use_case, run_fig3
from .sweep import SweepRunUseCase, get_sweep_use_case, run_sweep
from .validate import ValidateUseCase, get_validate_use_case, validate
