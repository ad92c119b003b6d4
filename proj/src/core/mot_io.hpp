#pragma once

#include <optional>
#include <string>

#include "core/types.hpp"

namespace omni {

// MOTChallenge text layout, one record per line, LF endings:
//
//   frame,id,bb_left,bb_top,bb_width,bb_height,conf,-1,-1,-1
//
// Coordinates are normalized panorama fractions (bb_left may dip below zero
// for a box straddling the seam; the center is canonicalized on read).
// Detections carry id -1. Embeddings live in an optional sidecar file, one
// line of comma-separated reals per detection line, same order.

struct MotRecord {
  int frame = 0;
  long long id = -1;
  double left = 0.0, top = 0.0, width = 0.0, height = 0.0;
  double conf = 1.0;
};

std::vector<MotRecord> read_mot_records(const std::string& path);
PanoBox record_box(const MotRecord& r);

// Identity-carrying view (ground truth or tracker output).
Sequence read_mot_sequence(const std::string& path);
void write_mot_sequence(const Sequence& seq, const std::string& path);

// Detection view; the sidecar, when given, must have exactly one line per
// detection record (InputError otherwise).
DetectionFrames read_mot_detections(const std::string& path,
                                    const std::optional<std::string>& embed_path);
void write_mot_detections(const DetectionFrames& dets, const std::string& path,
                          const std::optional<std::string>& embed_path);
void write_embedding_sidecar(const DetectionFrames& dets, const std::string& path);

}  // namespace omni
