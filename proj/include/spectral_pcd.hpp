// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header for the spectral_pcd library.

#ifndef SPECTRAL_PCD_HPP
#define SPECTRAL_PCD_HPP

#include "spectral_pcd/augment.hpp"
#include "spectral_pcd/core.hpp"
#include "spectral_pcd/errors.hpp"
#include "spectral_pcd/io/csv.hpp"
#include "spectral_pcd/io/dataset.hpp"
#include "spectral_pcd/io/file.hpp"
#include "spectral_pcd/io/image.hpp"
#include "spectral_pcd/io/ply.hpp"
#include "spectral_pcd/io/pointcloud.hpp"
#include "spectral_pcd/io/spectrum_file.hpp"
#include "spectral_pcd/parallel.hpp"
#include "spectral_pcd/spectral.hpp"
#include "spectral_pcd/style.hpp"
#include "spectral_pcd/transform.hpp"
#include "spectral_pcd/verify.hpp"

#endif  // SPECTRAL_PCD_HPP
