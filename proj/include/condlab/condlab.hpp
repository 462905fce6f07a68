#ifndef CONDLAB_CONDLAB_HPP
#define CONDLAB_CONDLAB_HPP

#include "condlab/error.hpp"
#include "condlab/rational.hpp"
#include "condlab/core.hpp"
#include "condlab/lottery.hpp"
#include "condlab/config.hpp"
#include "condlab/domains.hpp"
#include "condlab/sds.hpp"
#include "condlab/axioms.hpp"
#include "condlab/lp.hpp"
#include "condlab/analysis.hpp"
#include "condlab/adpath.hpp"
#include "condlab/serialize.hpp"
#include "condlab/theorems.hpp"

#endif  // CONDLAB_CONDLAB_HPP
