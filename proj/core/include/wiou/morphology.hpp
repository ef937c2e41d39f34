#pragma once

#include "wiou/label_map.hpp"

namespace wiou {

enum class MorphOp { Erode, Dilate };

// Applies `level` iterations of the 3x3 square structuring element to the
// binary mask of `cls` and folds the result back into a full label map.
// Pixels gained by dilation become `cls`; pixels lost by erosion take the
// class of the nearest non-`cls` pixel of the input map (Euclidean distance,
// ties broken toward the smallest class id). Level 0 is the identity.
LabelMap morphological_op(const LabelMap& map, ClassId cls, MorphOp op, int level);

}  // namespace wiou
