#pragma once

#include "pseudofield/core_algebra.hpp"
#include "pseudofield/element.hpp"
#include "pseudofield/extraction.hpp"
#include "pseudofield/group_construction.hpp"
#include "pseudofield/instances.hpp"
#include "pseudofield/linalg.hpp"
#include "pseudofield/partial.hpp"
#include "pseudofield/report.hpp"
#include "pseudofield/report_json.hpp"
#include "pseudofield/scalar.hpp"
#include "pseudofield/verify.hpp"
#include "pseudofield/word_calculus.hpp"
