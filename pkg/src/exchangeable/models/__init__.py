"""Generative Bayesian models for exchangeable arrays and the BJR sparse graph model."""
from .eigen import EigenParams, EigenSample, bilinear, eigenmodel_sample
from .mondrian import (
    Cut,
    Floorplan,
    MondrianRelationalSample,
    beta_psi,
    mondrian_relational_sample,
    mondrian_sample,
    replay,
)
from .relational import IrmParams, IrmSample, LfrmParams, LfrmSample, irm_sample, lfrm_sample, link_probabilities
from .sparse import bjr_sample

__all__ = [
    "Cut", "EigenParams", "EigenSample", "Floorplan", "IrmParams", "IrmSample", "LfrmParams",
    "LfrmSample", "MondrianRelationalSample", "beta_psi", "bilinear", "bjr_sample",
    "eigenmodel_sample", "irm_sample", "lfrm_sample", "link_probabilities",
    "mondrian_relational_sample", "mondrian_sample", "replay",
]
