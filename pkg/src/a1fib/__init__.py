"""Exact dual-graph blow-up calculus, Hirzebruch intersection theory, and a
census of affine-line fibrations on rational surfaces with irreducible
boundary."""

from .algebra import (BihomForm, LaurentPoly, UniPoly, bezout,
                      diagonal_restrict, exact_root, ord_at_zero)
from .classifier import (EquivWitness, Finite, GluingDatum, GluingError,
                         GluingReport, Infinite, MaximalForm, NotEquivalent,
                         SlsParams, canonical_invariant, count_classes,
                         equivalent, gluing_check, maximal_normal_form,
                         moduli_family, mu2_normalize, mu2_reconstruct,
                         power_consistency, reduced_gluing, sls_gluing,
                         wd_gluing)
from .hirzebruch import (AmpleModel, HClass, ModelError, adjunction_defect,
                         ample_model, ample_models, canonical,
                         contact_system_dim, contact_system_dim_via_h0,
                         elementary_transform, h0, h1_p1_dim,
                         h1_p1_projective_dim, intersect, ruling_swap_trace,
                         self_intersection)
from .pencils import (ScenarioError, bvs_contact_order, bvs_curve,
                      replay_reduced_contraction, resolve_complete,
                      resolve_conic, resolve_mult2, resolve_reduced,
                      resolve_sls, same_torus_orbit, torus_orbit_map)
from .sncgraph import (FiberSolveError, GraphError, SncGraph, Vertex, blow_up,
                       chain_type, contract, fiber_multiplicities,
                       fiber_self_intersection, graph_from_json,
                       graph_from_obj, graph_to_dot, graph_to_json,
                       graph_to_obj, graphs_isomorphic, induced_subgraph,
                       is_connected, is_tree, make_graph)

__version__ = "0.1.0"
