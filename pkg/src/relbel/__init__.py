"""relbel: measuring statistical evidence with relative belief ratios.

A grid-based toolkit: finite discretizations of parameter spaces, exact
Bayes updates, relative belief ratios with strength and regions, a-priori
bias of a prior-model pair, and executable reproductions of the classical
pathologies (likelihood regions, p-values, confidence regions, Bayes
factors) that motivate separating evidence from its strength.
"""

from .bayes import (
    BFResult,
    SpikeSlabPrior,
    bayes_factor,
    bf_predictive,
    jeffreys_label,
    jl_bayes_factor,
    jl_strength,
    map_estimate,
    spike_slab_bf,
)
from .bias import (
    BiasResult,
    BiasSpec,
    NormalPrior,
    bias_against,
    bias_convergence_study,
    bias_in_favor,
    jl_bias_closed_form,
    measure_bias,
)
from .errors import ConfigError, NumericError, RelbelError, ValidationError
from .evidence import (
    EvidenceVerdict,
    RBCurve,
    RegionResult,
    gamma_region,
    mrbe,
    plausible_region,
    rb_curve,
    rb_set,
    rb_union,
    rb_via_predictive,
    strength,
    strength_curve,
    verdict_for,
)
from .frequentist import (
    MixtureModelSpec,
    OptionalStoppingResult,
    TestSpec,
    confidence_region,
    mixture_acceptance_interval,
    mixture_region_demo,
    optional_stopping_quadrature,
    optional_stopping_sim,
    p_value,
    sample_size_insensitivity,
)
from .grids import (
    ArgmaxResult,
    MarginalMap,
    MassTable,
    ParamGrid,
    condition,
    make_uniform_grid,
    marginalize,
    normal_cdf,
    prob_of,
    pushforward,
)
from .likelihood import (
    LikelihoodCurve,
    WordModelSpec,
    likelihood_curve,
    likelihood_region,
    mle,
    profile_likelihood,
    word_model,
)
from .models import EvalModel, GaussianMeanModel, TabularModel, bernoulli_model, product_model

__version__ = "0.1.0"

__all__ = [
    "ArgmaxResult",
    "BFResult",
    "BiasResult",
    "BiasSpec",
    "ConfigError",
    "EvalModel",
    "EvidenceVerdict",
    "GaussianMeanModel",
    "LikelihoodCurve",
    "MarginalMap",
    "MassTable",
    "MixtureModelSpec",
    "NormalPrior",
    "NumericError",
    "OptionalStoppingResult",
    "ParamGrid",
    "RBCurve",
    "RegionResult",
    "RelbelError",
    "SpikeSlabPrior",
    "TabularModel",
    "TestSpec",
    "ValidationError",
    "WordModelSpec",
    "bayes_factor",
    "bernoulli_model",
    "bf_predictive",
    "bias_against",
    "bias_convergence_study",
    "bias_in_favor",
    "condition",
    "confidence_region",
    "gamma_region",
    "jeffreys_label",
    "jl_bayes_factor",
    "jl_bias_closed_form",
    "jl_strength",
    "likelihood_curve",
    "likelihood_region",
    "make_uniform_grid",
    "map_estimate",
    "marginalize",
    "measure_bias",
    "mixture_acceptance_interval",
    "mixture_region_demo",
    "mle",
    "mrbe",
    "normal_cdf",
    "optional_stopping_quadrature",
    "optional_stopping_sim",
    "p_value",
    "plausible_region",
    "prob_of",
    "product_model",
    "profile_likelihood",
    "pushforward",
    "rb_curve",
    "rb_set",
    "rb_union",
    "rb_via_predictive",
    "sample_size_insensitivity",
    "spike_slab_bf",
    "strength",
    "strength_curve",
    "verdict_for",
    "word_model",
]
