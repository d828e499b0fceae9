#pragma once

#include "hiddenauto/word.hpp"
#include "hiddenauto/morph_format.hpp"
#include "hiddenauto/linalg.hpp"
#include "hiddenauto/sequence.hpp"
#include "hiddenauto/constructions.hpp"
#include "hiddenauto/report_json.hpp"
#include "hiddenauto/criteria.hpp"
#include "hiddenauto/corpus.hpp"
