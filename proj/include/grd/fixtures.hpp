#pragma once

#include <memory>
#include <string>

#include "grd/bundle.hpp"
#include "grd/deaconu_renault.hpp"
#include "grd/growth.hpp"
#include "grd/partial_action.hpp"

namespace grd {

/// Named fixtures shared by the CLI, the test suites and the acceptance
/// runner.

/// One-unit or pair-type view by name: "pair" (n points), "cyclic" (Z/n),
/// "symmetric" (S_n), "product" (Z/2 x n points), "free-ball" (F_2 ball of
/// radius n), "z-ball" (Z ball of radius n).
ViewPtr make_system_view(const std::string& system, int n);

/// Bundle over a view: "trivial" (dim = rank), "twisted" (line bundle with
/// sigma(g, g) = -1 on Z/2-type views), "action" (M_dim with conjugation by
/// the cyclic shift unitary; one-unit group views only).
BundlePtr make_bundle(const ViewPtr& view, const std::string& kind, int dim);

/// The twisted Z/2 line bundle with sigma(g,g) = -1.
BundlePtr make_twisted_z2();

/// Action of Z/2 on M_2 by conjugation with the swap unitary.
BundlePtr make_action_z2_m2();

/// Local system by name: "full-shift" (arity d), "af" (chain truncated at
/// K = 32), or a graph path system.
std::shared_ptr<const LocalSystem> make_local_system(const std::string& kind, int arity);

/// Single-vertex graph with `loops` loops; the path groupoid of 1 loop is
/// the integers, of d >= 2 loops the full d-shift groupoid.
Graph loop_graph(int loops);

/// Graph from the CLI JSON schema {"vertices": [...], "edges": [{src,dst,label}]}.
Graph parse_graph_json(const std::string& json_text);

}  // namespace grd
