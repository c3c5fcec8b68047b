#pragma once

#include "twoprime/adic.hpp"
#include "twoprime/bignat.hpp"
#include "twoprime/cyclotomy.hpp"
#include "twoprime/modarith.hpp"
#include "twoprime/report_json.hpp"
#include "twoprime/scan.hpp"
#include "twoprime/sequence.hpp"
#include "twoprime/verify.hpp"
