#pragma once

// CSV formats for heatmaps, scenes, experiment records and summaries.
//
// Heatmap: first row "x_min,x_max,y_min,y_max,nx,ny,normalized" holding the
// grid values (normalized as 0/1), then ny rows of nx values; each row is a
// fixed y, x ascending within the row, rows in ascending y.
// Scene: header "class_id,x,y", one object per line.
// Records: "experiment,dim,n_total,partition,class_size,trial,role,similarity".
// Summary: "experiment,dim,group_key,role,count,q1,median,q3,lo_whisker,hi_whisker".

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hdc/capacity.hpp"
#include "hdc/error.hpp"
#include "hdc/spatial.hpp"

namespace hdc {

/// Error in an input file; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

void write_heatmap_csv(std::ostream& out, const SimilarityHeatmap& hm);
SimilarityHeatmap read_heatmap_csv(std::istream& in);

/// Throws ParseError naming the offending line; an input without objects is
/// rejected too.
std::vector<LabeledObject> read_scene_csv(std::istream& in);
void write_scene_csv(std::ostream& out, std::span<const LabeledObject> objects);

/// Rows sorted by record_order, then role (member first), then sample index.
/// With `raw` set the similarity column holds raw dot products instead.
void write_records_csv(std::ostream& out, std::span<const CapacityRecord> records,
                       bool raw = false);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace hdc
