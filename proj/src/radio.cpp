#include "sinrsched/radio.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace sinrsched {

double default_tx_power(double beta, double noise) { return 100.0 * beta * noise; }

const Node& NetworkInstance::node(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes.size())
    throw std::domain_error("unknown node id " + std::to_string(id));
  return nodes[static_cast<std::size_t>(id)];
}

const Link& NetworkInstance::link(LinkId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= links.size())
    throw std::domain_error("unknown link id " + std::to_string(id));
  return links[static_cast<std::size_t>(id)];
}

void validate(const NetworkInstance& instance) {
  const RadioParams& r = instance.radio;
  if (!(r.alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (!(r.beta >= 1.0)) throw std::invalid_argument("beta must be >= 1");
  if (!(r.noise >= 0.0) || !std::isfinite(r.noise))
    throw std::invalid_argument("noise must be finite and >= 0");
  if (!(r.tx_power > 0.0) || !std::isfinite(r.tx_power))
    throw std::invalid_argument("tx_power must be finite and > 0");

  const auto& nodes = instance.nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != static_cast<NodeId>(i))
      throw std::invalid_argument("node ids must be 0..n-1 in order");
    if (!std::isfinite(nodes[i].x) || !std::isfinite(nodes[i].y))
      throw std::invalid_argument("node " + std::to_string(i) + " has non-finite coordinates");
  }
  std::set<std::pair<double, double>> seen;
  for (const Node& n : nodes) {
    if (!seen.emplace(n.x, n.y).second)
      throw std::invalid_argument("node " + std::to_string(n.id) + " shares coordinates");
  }

  if (instance.links.empty()) throw std::invalid_argument("instance has no links");
  for (std::size_t j = 0; j < instance.links.size(); ++j) {
    const Link& l = instance.links[j];
    const std::string tag = "link " + std::to_string(j);
    if (l.id != static_cast<LinkId>(j))
      throw std::invalid_argument("link ids must be 0..m-1 in order");
    if (l.sender < 0 || static_cast<std::size_t>(l.sender) >= nodes.size() || l.receiver < 0 ||
        static_cast<std::size_t>(l.receiver) >= nodes.size())
      throw std::invalid_argument(tag + " references an unknown node");
    if (l.sender == l.receiver) throw std::invalid_argument(tag + " is a self-loop");
    if (!(l.rate > 0.0) || !std::isfinite(l.rate))
      throw std::invalid_argument(tag + " must have a finite positive rate");
    if (distance(instance, l.sender, l.receiver) < kMinDistance)
      throw std::invalid_argument(tag + " is shorter than the minimum distance");
  }
}

double distance(const Node& a, const Node& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance(const NetworkInstance& instance, NodeId a, NodeId b) {
  return distance(instance.node(a), instance.node(b));
}

double link_length(const NetworkInstance& instance, LinkId link) {
  const Link& l = instance.link(link);
  return distance(instance, l.sender, l.receiver);
}

double link_gain(const NetworkInstance& instance, NodeId from, NodeId to) {
  if (from == to) throw std::domain_error("link gain requested between a node and itself");
  const double d = distance(instance, from, to);
  if (d < kMinDistance) throw std::domain_error("nodes closer than the minimum distance");
  return std::pow(d, -instance.radio.alpha);
}

double sinr_at_receiver(const NetworkInstance& instance, LinkId link,
                        std::span<const LinkId> concurrent) {
  const Link& target = instance.link(link);
  const double power = instance.radio.tx_power;
  const double signal = power * link_gain(instance, target.sender, target.receiver);
  double interference = 0.0;
  for (LinkId other : concurrent) {
    if (other == link) throw std::domain_error("link listed as its own interferer");
    const NodeId s = instance.link(other).sender;
    if (s == target.receiver) return 0.0;
    interference += power * link_gain(instance, s, target.receiver);
  }
  return signal / (instance.radio.noise + interference);
}

double db_to_linear(double db_value) { return std::pow(10.0, db_value / 10.0); }

double linear_to_db(double linear_value) {
  if (!(linear_value > 0.0)) throw std::domain_error("linear_to_db needs a positive value");
  return 10.0 * std::log10(linear_value);
}

double dbm_to_mw(double dbm) { return db_to_linear(dbm); }

}  // namespace sinrsched
