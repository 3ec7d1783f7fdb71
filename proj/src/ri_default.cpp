#include "pcm/consistency.hpp"

namespace pcm {

namespace {

// Keep in sync with data/ri_table.txt (checked by the unit tests).
constexpr const char* kDefaultTable = R"(# n ri samples seed
3 0.52596294629955043 1000000 20240601
4 0.88399115107018744 1000000 20240601
5 1.1092859805534465 1000000 20240601
6 1.2492767805296121 1000000 20240601
7 1.341105627259922 1000000 20240601
8 1.4043440357644592 1000000 20240601
9 1.4508305089940376 1000000 20240601
10 1.4862325785010992 1000000 20240601
11 1.51371447319764 1000000 20240601
12 1.5365128633466523 1000000 20240601
13 1.5548900167094235 1000000 20240601
14 1.570374569131934 1000000 20240601
15 1.5839172546970639 1000000 20240601
)";

}  // namespace

const RiTable& default_ri_table() {
    static const RiTable table = RiTable::parse(kDefaultTable);
    return table;
}

}  // namespace pcm
