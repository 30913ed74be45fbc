/*
* Copyright (C) 2026 episdyn contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef EPISDYN_CSV_HPP
#define EPISDYN_CSV_HPP

#include "episdyn/integrate.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace episdyn
{

/// Columns t,S,I,R. Planar runs write R = 1 - S - I. Numbers use 17 significant digits.
std::string trajectory_csv(const Trajectory<PlanarState>& traj);
std::string trajectory_csv(const Trajectory<FullState>& traj);

struct CsvTrajectory
{
    std::vector<double> times;
    std::vector<FullState> states;
};

/// Parses text produced by trajectory_csv. Throws ParseError on a malformed row.
CsvTrajectory parse_trajectory_csv(const std::string& text);

/// Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

} // namespace episdyn

#endif // EPISDYN_CSV_HPP
