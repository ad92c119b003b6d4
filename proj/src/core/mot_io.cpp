#include "core/mot_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/common.hpp"

namespace omni {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(ctx + ": bad number '" + s + "'");
  }
}

std::string fmt_line(const MotRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%lld,%.6f,%.6f,%.6f,%.6f,%.6f,-1,-1,-1\n", r.frame, r.id,
                r.left, r.top, r.width, r.height, r.conf);
  return buf;
}

MotRecord from_box(int frame, long long id, const PanoBox& b, double conf) {
  return {frame, id, b.cu - b.w / 2.0, b.cv - b.h / 2.0, b.w, b.h, conf};
}

}  // namespace

std::vector<MotRecord> read_mot_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<MotRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string ctx = path + ":" + std::to_string(line_no);
    if (fields.size() < 7) throw InputError(ctx + ": expected at least 7 comma-separated fields");
    MotRecord r;
    r.frame = static_cast<int>(parse_real(fields[0], ctx));
    r.id = static_cast<long long>(parse_real(fields[1], ctx));
    r.left = parse_real(fields[2], ctx);
    r.top = parse_real(fields[3], ctx);
    r.width = parse_real(fields[4], ctx);
    r.height = parse_real(fields[5], ctx);
    r.conf = parse_real(fields[6], ctx);
    if (r.frame < 1) throw InputError(ctx + ": frame index must be >= 1");
    if (r.width <= 0.0 || r.height <= 0.0) throw InputError(ctx + ": non-positive box size");
    records.push_back(r);
  }
  return records;
}

PanoBox record_box(const MotRecord& r) {
  return PanoBox::make(r.left + r.width / 2.0, r.top + r.height / 2.0, r.width, r.height);
}

Sequence read_mot_sequence(const std::string& path) {
  Sequence seq;
  for (const MotRecord& r : read_mot_records(path)) {
    if (r.frame > seq.n_frames()) seq.frames.resize(r.frame);
    seq.frames[r.frame - 1].push_back({r.id, record_box(r), r.conf});
  }
  return seq;
}

void write_mot_sequence(const Sequence& seq, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  for (int f = 0; f < seq.n_frames(); ++f)
    for (const TrackedBox& b : seq.frames[f])
      out << fmt_line(from_box(f + 1, b.id, b.box, b.score));
}

DetectionFrames read_mot_detections(const std::string& path,
                                    const std::optional<std::string>& embed_path) {
  const std::vector<MotRecord> records = read_mot_records(path);

  std::vector<Vec> embeds;
  if (embed_path) {
    std::ifstream in(*embed_path);
    if (!in) throw InputError("cannot open " + *embed_path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      Vec v;
      for (const std::string& tok : split(line, ','))
        v.push_back(parse_real(tok, *embed_path));
      embeds.push_back(std::move(v));
    }
    if (embeds.size() != records.size())
      throw InputError("embedding sidecar has " + std::to_string(embeds.size()) +
                       " lines for " + std::to_string(records.size()) + " detections");
  }

  DetectionFrames frames;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MotRecord& r = records[i];
    if (r.frame > static_cast<int>(frames.size())) frames.resize(r.frame);
    Detection d;
    d.box = record_box(r);
    d.score = r.conf;
    if (embed_path) d.embedding = embeds[i];
    frames[r.frame - 1].push_back(std::move(d));
  }
  return frames;
}

void write_mot_detections(const DetectionFrames& dets, const std::string& path,
                          const std::optional<std::string>& embed_path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  for (std::size_t f = 0; f < dets.size(); ++f)
    for (const Detection& d : dets[f])
      out << fmt_line(from_box(static_cast<int>(f) + 1, -1, d.box, d.score));
  if (embed_path) write_embedding_sidecar(dets, *embed_path);
}

void write_embedding_sidecar(const DetectionFrames& dets, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  char buf[32];
  for (const auto& frame : dets) {
    for (const Detection& d : frame) {
      for (std::size_t i = 0; i < d.embedding.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g", d.embedding[i]);
        if (i) out << ',';
        out << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace omni
