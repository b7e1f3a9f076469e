#pragma once

#include <string_view>

namespace rcm::embedded
{

/* data/frames.tsv as compiled in */
std::string_view frames();

/* data/approaches.tsv as compiled in */
std::string_view approaches();

} // namespace rcm::embedded
