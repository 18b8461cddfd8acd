#ifndef QLAB_QLAB_HPP
#define QLAB_QLAB_HPP

#include "qlab/algebra.hpp"
#include "qlab/audit.hpp"
#include "qlab/generators.hpp"
#include "qlab/io.hpp"
#include "qlab/laws.hpp"
#include "qlab/monotone_map.hpp"
#include "qlab/wedge.hpp"

#endif  // QLAB_QLAB_HPP
