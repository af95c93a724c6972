#pragma once

// Geometry, path loss and SINR arithmetic under the physical interference
// model. All powers are linear (milliwatts); dB values only appear at the
// configuration boundary through db_to_linear / dbm_to_mw.

#include <cstddef>
#include <span>
#include <vector>

namespace sinrsched {

using NodeId = int;
using LinkId = int;

/// Node pairs closer than this are rejected; gain would blow up as d -> 0.
inline constexpr double kMinDistance = 1e-6;

struct Node {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct Link {
  LinkId id = 0;
  NodeId sender = 0;
  NodeId receiver = 0;
  double rate = 1.0;  // traffic units per slot
};

struct RadioParams {
  double alpha = 4.0;     // path-loss exponent, > 2
  double beta = 10.0;     // SINR threshold, linear, >= 1
  double noise = 1e-9;    // ambient noise, mW
  double tx_power = 1e-6; // common transmit power, mW
};

/// Transmit power giving SNR = 100 * beta at unit distance.
double default_tx_power(double beta, double noise);

/// A directed link set over planar nodes. Node and link ids must be dense
/// (`nodes[i].id == i`, `links[j].id == j`); validate() enforces it, and
/// every accessor below relies on it.
struct NetworkInstance {
  std::vector<Node> nodes;
  std::vector<Link> links;
  RadioParams radio;

  const Node& node(NodeId id) const;
  const Link& link(LinkId id) const;
  std::size_t link_count() const { return links.size(); }
  std::size_t node_count() const { return nodes.size(); }
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate(const NetworkInstance& instance);

double distance(const Node& a, const Node& b);
double distance(const NetworkInstance& instance, NodeId a, NodeId b);
double link_length(const NetworkInstance& instance, LinkId link);

/// d^-alpha between two distinct nodes. Throws std::domain_error on equal ids
/// or when the nodes are closer than kMinDistance.
double link_gain(const NetworkInstance& instance, NodeId from, NodeId to);

/// SINR at the receiver of `link` when the senders of `concurrent` transmit
/// at the same time. Every concurrent sender counts, not only links that
/// terminate at the same receiver. A concurrent sender located at the
/// receiver itself (a half-duplex clash) drives the SINR to 0.
double sinr_at_receiver(const NetworkInstance& instance, LinkId link,
                        std::span<const LinkId> concurrent);

double db_to_linear(double db_value);
double linear_to_db(double linear_value);
/// dBm -> mW.
double dbm_to_mw(double dbm);

}  // namespace sinrsched
