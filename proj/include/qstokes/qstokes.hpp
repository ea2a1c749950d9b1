#pragma once

#include "qstokes/error.hpp"
#include "qstokes/scaled_complex.hpp"
#include "qstokes/qcore.hpp"
#include "qstokes/qseries.hpp"
#include "qstokes/report.hpp"
#include "qstokes/connection.hpp"
#include "qstokes/resummation.hpp"
#include "qstokes/limits.hpp"
#include "qstokes/suites.hpp"
#include "qstokes/report_io.hpp"
#include "qstokes/cli.hpp"
