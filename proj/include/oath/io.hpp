#pragma once

#include <string>
#include <vector>

#include "oath/halton.hpp"
#include "oath/roadmap.hpp"

namespace oath {

// i,x,y,delta,accepted
std::string samples_csv(const std::vector<SamplePoint>& samples);
// id,x,y,tag,task,label (live nodes only)
std::string nodes_csv(const Roadmap& roadmap);
// a,b,weight
std::string edges_csv(const Roadmap& roadmap);
// Site ids as header row and first column; "inf" for unreachable pairs.
std::string matrix_csv(const DistanceMatrix& m);

void write_file(const std::string& path, const std::string& content);

}  // namespace oath
