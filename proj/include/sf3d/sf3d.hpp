// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_SF3D_HPP_
#define SF3D_SF3D_HPP_

// Umbrella header for the sf3d toolkit.

#include "sf3d/common.hpp"
#include "sf3d/config.hpp"
#include "sf3d/evaluate.hpp"
#include "sf3d/feature_io.hpp"
#include "sf3d/fft.hpp"
#include "sf3d/geometry.hpp"
#include "sf3d/heatmap.hpp"
#include "sf3d/mask.hpp"
#include "sf3d/mel.hpp"
#include "sf3d/room.hpp"
#include "sf3d/scenario.hpp"
#include "sf3d/scenario_io.hpp"
#include "sf3d/spatial.hpp"
#include "sf3d/stft.hpp"
#include "sf3d/synth.hpp"
#include "sf3d/wav.hpp"

#endif  // SF3D_SF3D_HPP_
