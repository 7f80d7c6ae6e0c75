#pragma once

#include "oath/scenario.hpp"

namespace fixtures {

inline oath::Scenario open_field(std::size_t n_candidates = 600) {
  oath::Scenario s;
  s.name = "open";
  s.width = 20;
  s.height = 20;
  s.sampling.n_candidates = n_candidates;
  s.delivery_points = {{"A", {18, 18}}, {"B", {2, 18}}};
  return s;
}

inline oath::RobotSpec robot(oath::RobotId id, oath::Point start, int capacity = 3,
                             std::vector<double> cap = {1, 1}) {
  oath::RobotSpec r;
  r.id = id;
  r.start = start;
  r.capacity = capacity;
  r.cls = cap.size() > 1 && cap[1] == 0 ? oath::RobotClass::drone : oath::RobotClass::ground;
  r.capability = std::move(cap);
  return r;
}

inline oath::TaskSpec task(oath::TaskId id, oath::Point pickup, std::string label, int type = 0) {
  oath::TaskSpec t;
  t.id = id;
  t.pickup = pickup;
  t.delivery_label = std::move(label);
  t.type = type;
  return t;
}

inline oath::TaskSpec task(oath::TaskId id, oath::Point pickup, oath::Point delivery, int type = 0) {
  oath::TaskSpec t;
  t.id = id;
  t.pickup = pickup;
  t.delivery = delivery;
  t.type = type;
  return t;
}

}  // namespace fixtures
