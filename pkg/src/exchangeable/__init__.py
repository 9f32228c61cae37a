"""Sampling and analysis of exchangeable random structures: partitions, feature allocations, arrays, graphs and their limits."""
from .errors import (ContractError, DomainError, ExchangeableError, ParameterError, SizeError,
                     ValidationError)
from .graphons import (AnalyticGraphon, StepGraphon, constant, graphon_eval, min_graphon,
                       parse_graphon_literal, validate_graphon)
from .rng import LatentKey, LatentStore, RandomSource, joint_key, pi_key, separate_key
from .structures import FeatureAllocation, Graph, Partition

__version__ = "0.1.0"
