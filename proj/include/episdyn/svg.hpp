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
#ifndef EPISDYN_SVG_HPP
#define EPISDYN_SVG_HPP

#include "episdyn/types.hpp"

#include <string>
#include <vector>

namespace episdyn
{

struct PortraitMarker
{
    PlanarState point;
    std::string label;
    bool stable = false; ///< filled when stable, hollow otherwise
};

/// Static phase portrait in the (S, I) simplex: triangle outline, one polyline per trajectory, markers.
std::string phase_portrait_svg(const std::vector<std::vector<PlanarState>>& trajectories,
                               const std::vector<PortraitMarker>& markers, const std::string& title);

} // namespace episdyn

#endif // EPISDYN_SVG_HPP
