#pragma once

#include <string_view>

#include "atr/affixes.hpp"

namespace atr {

/// Curated English affix list, combinations included (e.g. "ization" next
/// to "ize" and "ation") so that stripping removes the longest composite
/// ending in one cut. Same file format accepted by load_affix_table.
inline constexpr std::string_view kDefaultAffixSource = R"(# default affix table
[prefixes]
a
ab
ac
ad
af
ag
al
an
ante
anti
ap
ar
as
at
auto
be
bi
bio
circum
co
col
com
con
contra
cor
counter
cyber
de
deca
demi
di
dia
dis
down
dys
electro
em
en
epi
equi
ex
extra
fore
geo
hemi
hetero
homo
hydro
hyper
hypo
il
im
in
infra
inter
intra
intro
ir
iso
kilo
macro
magni
mal
mega
meta
micro
mid
milli
mini
mis
mono
multi
nano
neo
non
ob
oc
octo
omni
out
over
paleo
pan
para
penta
per
peri
photo
poly
post
pre
pro
proto
pseudo
psycho
quadri
quasi
re
retro
semi
socio
sub
super
supra
sur
sym
syn
techno
tele
thermo
trans
tri
ultra
un
under
uni
up
vice
[suffixes]
able
ably
age
al
ally
als
ance
ances
ancy
ant
ants
ar
ard
ary
ate
ated
ately
ates
ating
ation
ational
ations
ative
atively
ator
ators
cy
dom
ed
ee
eer
en
ence
ences
ency
ent
ents
er
ers
ery
es
est
eth
ful
fully
fy
hood
ial
ially
ian
ians
ible
ibly
ic
ical
ically
ician
icity
ics
ide
ier
ies
iest
ify
ile
ine
ing
ingly
ings
ion
ional
ionally
ions
ious
iously
ise
ised
iser
ises
ish
ising
ism
isms
ist
istic
ists
ite
ites
ity
ium
ive
ively
iveness
ization
izations
ize
ized
izer
izers
izes
izing
kin
less
lessly
lessness
let
like
ling
logy
ly
ment
mental
ments
most
ness
oid
ologies
ologist
ologists
ology
or
ors
ory
ose
osis
ous
ously
ship
ships
sion
sions
some
th
tion
tional
tionally
tions
tude
ty
ual
ually
ure
ward
wards
ware
wise
y
)";

/// Table baked into the binary; built once, shared afterwards.
inline const AffixTable& default_affix_table() {
    static const AffixTable table = load_affix_table(kDefaultAffixSource);
    return table;
}

}  // namespace atr
