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
#include "episdyn/csv.hpp"
#include "episdyn/format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace episdyn
{

namespace
{

template <class State>
std::string to_csv(const Trajectory<State>& traj)
{
    std::string out = "t,S,I,R\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const State& x = traj.states[k];
        double r = 0.0;
        if constexpr (std::is_same_v<State, FullState>) {
            r = x.r;
        }
        else {
            r = 1.0 - x.s - x.i;
        }
        out += fmt17(traj.times[k]);
        out += ',';
        out += fmt17(x.s);
        out += ',';
        out += fmt17(x.i);
        out += ',';
        out += fmt17(r);
        out += '\n';
    }
    return out;
}

} // namespace

std::string trajectory_csv(const Trajectory<PlanarState>& traj)
{
    return to_csv(traj);
}

std::string trajectory_csv(const Trajectory<FullState>& traj)
{
    return to_csv(traj);
}

CsvTrajectory parse_trajectory_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int line_no = 1;
    if (!std::getline(in, line) || line != "t,S,I,R") {
        throw ParseError(line_no, "expected header 't,S,I,R'");
    }
    CsvTrajectory out;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        double v[4];
        const char* pos = line.data();
        const char* end = line.data() + line.size();
        for (int c = 0; c < 4; ++c) {
            const auto res = std::from_chars(pos, end, v[c]);
            if (res.ec != std::errc()) {
                throw ParseError(line_no, "malformed number in column " + std::to_string(c + 1));
            }
            pos = res.ptr;
            if (c < 3) {
                if (pos == end || *pos != ',') {
                    throw ParseError(line_no, "expected 4 comma-separated columns");
                }
                ++pos;
            }
        }
        if (pos != end) {
            throw ParseError(line_no, "trailing characters");
        }
        out.times.push_back(v[0]);
        out.states.push_back({v[1], v[2], v[3]});
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace episdyn
