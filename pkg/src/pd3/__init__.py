"""Exact verification engine for a family of self-dual chain complexes over
Z[S3] and Z[S3 *_{Z/2} S3], with a CLI (`pd3`) that certifies every
computational claim: differentials, cycles, self-duality, homology,
annihilators, diagonal approximations, the orientability obstruction, and
degree-3 group homology."""

__version__ = "0.1.0"
