"""Stable models with strong negation, multi-valued constants and functions.

Submodules: ``logic`` (terms, formulas, interpretations), ``fosm``
(functional stable models), ``mvsm`` (multi-valued reducts), ``progsem``
(answer sets and two-valued programs), ``xlate`` (translations and
interpretation maps), ``ground`` (schemas and the built-in corpus),
``verify`` (theorem checks and oracles), ``syntax`` and ``cli``.
"""

__version__ = "0.1.0"
