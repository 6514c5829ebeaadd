#ifndef SURFBOUND_SURFBOUND_HPP
#define SURFBOUND_SURFBOUND_HPP

#include "atlas.hpp"
#include "bounding.hpp"
#include "error.hpp"
#include "generating_vector.hpp"
#include "group.hpp"
#include "handlebody.hpp"
#include "permutation.hpp"
#include "report.hpp"
#include "search.hpp"
#include "serialize.hpp"
#include "signature.hpp"
#include "subactions.hpp"
#include "subgroups.hpp"
#include "tetrahedron.hpp"

#endif // SURFBOUND_SURFBOUND_HPP
