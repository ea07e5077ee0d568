#include "tow/environment.hpp"

namespace tow {

// Transcription of the published 125-row reward table (choices, per-player
// implication degrees, per-player reward probability levels). The CSV bundled
// under data/ is the same content in the external file format; a test keeps
// the two in sync.
const EpdTable& builtin_epd_table() {
  static const EpdTable table = [] {
    std::vector<EpdRow> rows;
    rows.reserve(125);
    auto add = [&rows](int c1, int c2, int c3, int d1, int d2, int d3,
                       double p1, double p2, double p3) {
      rows.push_back(EpdRow{{c1, c2, c3}, {d1, d2, d3}, {p1, p2, p3}});
    };
    add(0, 0, 0, 0, 0, 0, 0.55, 0.55, 0.55);
    add(0, 0, 1, 0, 0, 1, 0.73, 0.73, 0.40);
    add(0, 0, 2, 1, 0, 0, 0.40, 0.73, 0.73);
    add(0, 0, 3, 0, 1, 0, 0.73, 0.40, 0.73);
    add(0, 0, 4, 1, 1, 0, 0.40, 0.40, 0.73);
    add(0, 1, 0, 0, 1, 0, 0.73, 0.40, 0.73);
    add(0, 1, 1, 0, 1, 1, 0.73, 0.40, 0.40);
    add(0, 1, 2, 1, 1, 0, 0.40, 0.40, 0.73);
    add(0, 1, 3, 0, 2, 0, 0.76, 0.30, 0.76);
    add(0, 1, 4, 1, 2, 0, 0.73, 0.30, 0.76);
    add(0, 2, 0, 0, 0, 1, 0.73, 0.73, 0.40);
    add(0, 2, 1, 0, 0, 2, 0.76, 0.76, 0.30);
    add(0, 2, 2, 1, 0, 1, 0.40, 0.73, 0.40);
    add(0, 2, 3, 0, 1, 1, 0.73, 0.40, 0.40);
    add(0, 2, 4, 1, 1, 1, 0.60, 0.60, 0.60);
    add(0, 3, 0, 1, 0, 0, 0.40, 0.73, 0.73);
    add(0, 3, 1, 1, 0, 1, 0.40, 0.73, 0.40);
    add(0, 3, 2, 2, 0, 0, 0.30, 0.76, 0.76);
    add(0, 3, 3, 1, 1, 0, 0.40, 0.40, 0.73);
    add(0, 3, 4, 2, 1, 0, 0.30, 0.73, 0.76);
    add(0, 4, 0, 1, 0, 1, 0.40, 0.73, 0.40);
    add(0, 4, 1, 1, 0, 2, 0.73, 0.76, 0.30);
    add(0, 4, 2, 2, 0, 1, 0.30, 0.76, 0.73);
    add(0, 4, 3, 1, 1, 1, 0.60, 0.60, 0.60);
    add(0, 4, 4, 2, 1, 1, 0.70, 0.70, 0.70);
    add(1, 0, 0, 1, 0, 0, 0.40, 0.73, 0.73);
    add(1, 0, 1, 1, 0, 1, 0.40, 0.73, 0.40);
    add(1, 0, 2, 2, 0, 0, 0.30, 0.76, 0.76);
    add(1, 0, 3, 1, 1, 0, 0.40, 0.40, 0.73);
    add(1, 0, 4, 2, 1, 0, 0.30, 0.73, 0.76);
    add(1, 1, 0, 1, 1, 0, 0.40, 0.40, 0.73);
    add(1, 1, 1, 1, 1, 1, 0.60, 0.60, 0.60);
    add(1, 1, 2, 2, 1, 0, 0.30, 0.73, 0.76);
    add(1, 1, 3, 1, 2, 0, 0.73, 0.30, 0.76);
    add(1, 1, 4, 2, 2, 0, 0.30, 0.30, 0.76);
    add(1, 2, 0, 1, 0, 1, 0.40, 0.73, 0.40);
    add(1, 2, 1, 1, 0, 2, 0.73, 0.76, 0.30);
    add(1, 2, 2, 2, 0, 1, 0.30, 0.76, 0.73);
    add(1, 2, 3, 1, 1, 1, 0.60, 0.60, 0.60);
    add(1, 2, 4, 2, 1, 1, 0.70, 0.70, 0.70);
    add(1, 3, 0, 2, 0, 0, 0.30, 0.76, 0.76);
    add(1, 3, 1, 2, 0, 1, 0.30, 0.76, 0.73);
    add(1, 3, 2, 3, 0, 0, 0.20, 0.79, 0.79);
    add(1, 3, 3, 2, 1, 0, 0.30, 0.73, 0.76);
    add(1, 3, 4, 3, 1, 0, 0.20, 0.76, 0.79);
    add(1, 4, 0, 2, 0, 1, 0.30, 0.76, 0.73);
    add(1, 4, 1, 2, 0, 2, 0.30, 0.76, 0.30);
    add(1, 4, 2, 3, 0, 1, 0.20, 0.79, 0.76);
    add(1, 4, 3, 2, 1, 1, 0.70, 0.70, 0.70);
    add(1, 4, 4, 3, 1, 1, 0.30, 0.76, 0.76);
    add(2, 0, 0, 0, 1, 0, 0.73, 0.40, 0.73);
    add(2, 0, 1, 0, 1, 1, 0.73, 0.40, 0.40);
    add(2, 0, 2, 1, 1, 0, 0.40, 0.40, 0.73);
    add(2, 0, 3, 0, 2, 0, 0.76, 0.30, 0.76);
    add(2, 0, 4, 1, 2, 0, 0.73, 0.30, 0.76);
    add(2, 1, 0, 0, 2, 0, 0.76, 0.30, 0.76);
    add(2, 1, 1, 0, 2, 1, 0.76, 0.30, 0.73);
    add(2, 1, 2, 1, 2, 0, 0.73, 0.30, 0.76);
    add(2, 1, 3, 0, 3, 0, 0.79, 0.20, 0.79);
    add(2, 1, 4, 1, 3, 0, 0.76, 0.20, 0.79);
    add(2, 2, 0, 0, 1, 1, 0.73, 0.40, 0.40);
    add(2, 2, 1, 0, 1, 2, 0.76, 0.73, 0.30);
    add(2, 2, 2, 1, 1, 1, 0.60, 0.60, 0.60);
    add(2, 2, 3, 0, 2, 1, 0.76, 0.30, 0.73);
    add(2, 2, 4, 1, 2, 1, 0.70, 0.70, 0.70);
    add(2, 3, 0, 1, 1, 0, 0.40, 0.40, 0.73);
    add(2, 3, 1, 1, 1, 1, 0.60, 0.60, 0.60);
    add(2, 3, 2, 2, 1, 0, 0.30, 0.73, 0.76);
    add(2, 3, 3, 1, 2, 0, 0.73, 0.30, 0.76);
    add(2, 3, 4, 2, 2, 0, 0.30, 0.30, 0.76);
    add(2, 4, 0, 1, 1, 1, 0.60, 0.60, 0.60);
    add(2, 4, 1, 1, 1, 2, 0.70, 0.70, 0.70);
    add(2, 4, 2, 2, 1, 1, 0.70, 0.70, 0.70);
    add(2, 4, 3, 1, 2, 1, 0.70, 0.70, 0.70);
    add(2, 4, 4, 2, 2, 1, 0.40, 0.40, 0.73);
    add(3, 0, 0, 0, 0, 1, 0.73, 0.73, 0.40);
    add(3, 0, 1, 0, 0, 2, 0.76, 0.76, 0.30);
    add(3, 0, 2, 1, 0, 1, 0.40, 0.73, 0.40);
    add(3, 0, 3, 0, 1, 1, 0.73, 0.40, 0.40);
    add(3, 0, 4, 1, 1, 1, 0.60, 0.60, 0.60);
    add(3, 1, 0, 0, 1, 1, 0.73, 0.40, 0.40);
    add(3, 1, 1, 0, 1, 2, 0.76, 0.73, 0.30);
    add(3, 1, 2, 1, 1, 1, 0.60, 0.60, 0.60);
    add(3, 1, 3, 0, 2, 1, 0.76, 0.30, 0.73);
    add(3, 1, 4, 1, 2, 1, 0.70, 0.70, 0.70);
    add(3, 2, 0, 0, 0, 2, 0.76, 0.76, 0.30);
    add(3, 2, 1, 0, 0, 3, 0.79, 0.79, 0.20);
    add(3, 2, 2, 1, 0, 2, 0.73, 0.76, 0.30);
    add(3, 2, 3, 0, 1, 2, 0.76, 0.73, 0.30);
    add(3, 2, 4, 1, 1, 2, 0.70, 0.70, 0.70);
    add(3, 3, 0, 1, 0, 1, 0.40, 0.73, 0.40);
    add(3, 3, 1, 1, 0, 2, 0.73, 0.76, 0.30);
    add(3, 3, 2, 2, 0, 1, 0.30, 0.76, 0.73);
    add(3, 3, 3, 1, 1, 1, 0.60, 0.60, 0.60);
    add(3, 3, 4, 2, 1, 1, 0.70, 0.70, 0.70);
    add(3, 4, 0, 1, 0, 2, 0.73, 0.76, 0.30);
    add(3, 4, 1, 1, 0, 3, 0.76, 0.79, 0.20);
    add(3, 4, 2, 2, 0, 2, 0.30, 0.76, 0.30);
    add(3, 4, 3, 1, 1, 2, 0.70, 0.70, 0.70);
    add(3, 4, 4, 2, 1, 2, 0.40, 0.73, 0.40);
    add(4, 0, 0, 0, 1, 1, 0.73, 0.40, 0.40);
    add(4, 0, 1, 0, 1, 2, 0.76, 0.73, 0.30);
    add(4, 0, 2, 1, 1, 1, 0.60, 0.60, 0.60);
    add(4, 0, 3, 0, 2, 1, 0.76, 0.30, 0.73);
    add(4, 0, 4, 1, 2, 1, 0.70, 0.70, 0.70);
    add(4, 1, 0, 0, 2, 1, 0.76, 0.30, 0.73);
    add(4, 1, 1, 0, 2, 2, 0.76, 0.30, 0.30);
    add(4, 1, 2, 1, 2, 1, 0.70, 0.70, 0.70);
    add(4, 1, 3, 0, 3, 1, 0.79, 0.20, 0.76);
    add(4, 1, 4, 1, 3, 1, 0.76, 0.30, 0.76);
    add(4, 2, 0, 0, 1, 2, 0.76, 0.73, 0.30);
    add(4, 2, 1, 0, 1, 3, 0.79, 0.76, 0.20);
    add(4, 2, 2, 1, 1, 2, 0.70, 0.70, 0.70);
    add(4, 2, 3, 0, 2, 2, 0.76, 0.30, 0.30);
    add(4, 2, 4, 1, 2, 2, 0.73, 0.40, 0.40);
    add(4, 3, 0, 1, 1, 1, 0.60, 0.60, 0.60);
    add(4, 3, 1, 1, 1, 2, 0.70, 0.70, 0.70);
    add(4, 3, 2, 2, 1, 1, 0.70, 0.70, 0.70);
    add(4, 3, 3, 1, 2, 1, 0.70, 0.70, 0.70);
    add(4, 3, 4, 2, 2, 1, 0.40, 0.40, 0.73);
    add(4, 4, 0, 1, 1, 2, 0.70, 0.70, 0.70);
    add(4, 4, 1, 1, 1, 3, 0.76, 0.76, 0.30);
    add(4, 4, 2, 2, 1, 2, 0.40, 0.73, 0.40);
    add(4, 4, 3, 1, 2, 2, 0.73, 0.40, 0.40);
    add(4, 4, 4, 2, 2, 2, 0.50, 0.50, 0.50);
    return EpdTable(std::move(rows));
  }();
  return table;
}

}  // namespace tow
